fn main() {
    std::process::exit(lrslab::cli::run(std::env::args_os()));
}
