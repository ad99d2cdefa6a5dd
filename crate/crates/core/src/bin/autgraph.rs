fn main() -> std::process::ExitCode {
    autgraph::cli::main()
}
