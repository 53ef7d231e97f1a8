fn main() {
    std::process::exit(colddamp::cli::run());
}
