fn main() {
    std::process::exit(pchief::clikit::cli_main(std::env::args()));
}
