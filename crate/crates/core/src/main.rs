fn main() -> std::process::ExitCode {
    spiderq::cli::main()
}
