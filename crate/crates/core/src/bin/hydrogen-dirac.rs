fn main() -> std::process::ExitCode {
    hydrogen_dirac::cli::main()
}
