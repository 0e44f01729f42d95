fn main() -> std::process::ExitCode {
    qcongruence::cli::main()
}
