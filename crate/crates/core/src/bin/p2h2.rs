fn main() -> std::process::ExitCode {
    p2h2::cli::main()
}
