fn main() -> std::process::ExitCode {
    bembed::cli::main()
}
