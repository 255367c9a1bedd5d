fn main() {
    std::process::exit(polycell::cli::run(std::env::args_os()));
}
