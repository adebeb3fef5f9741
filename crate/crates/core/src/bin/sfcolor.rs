fn main() -> std::process::ExitCode {
    squarefree_berge::cli::main()
}
