fn main() {
    std::process::exit(vnf::cli::run(std::env::args_os()));
}
