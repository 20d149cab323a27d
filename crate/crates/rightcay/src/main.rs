fn main() {
    std::process::exit(rightcay::cli::run());
}
