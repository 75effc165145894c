fn main() {
    std::process::exit(davenport_cli::cli::run());
}
