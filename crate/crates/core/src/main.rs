fn main() -> std::process::ExitCode {
    igband::cli::main()
}
