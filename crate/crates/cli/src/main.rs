fn main() -> std::process::ExitCode {
    hurwitz_cli::run()
}
