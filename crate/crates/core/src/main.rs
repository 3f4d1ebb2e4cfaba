fn main() {
    std::process::exit(ncperiod::cli::main_entry());
}
