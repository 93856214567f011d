fn main() -> std::process::ExitCode {
    rlemaw::cli::main()
}
