//! Mutation switches for `selftest`. They deliberately break one invariant
//! so the suite can show it notices. Never set outside of that command.

use std::sync::atomic::{AtomicBool, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Conjugates every local character ψ_p.
    PsiSignFlip,
    /// Multiplies the kernels by (1 + s), which is not even in s.
    KernelAsymmetry,
}

static PSI_SIGN_FLIP: AtomicBool = AtomicBool::new(false);
static KERNEL_ASYMMETRY: AtomicBool = AtomicBool::new(false);

fn flag(m: Mutation) -> &'static AtomicBool {
    match m {
        Mutation::PsiSignFlip => &PSI_SIGN_FLIP,
        Mutation::KernelAsymmetry => &KERNEL_ASYMMETRY,
    }
}

pub fn set(m: Mutation, on: bool) {
    flag(m).store(on, Ordering::SeqCst);
}

pub fn active(m: Mutation) -> bool {
    flag(m).load(Ordering::Relaxed)
}
