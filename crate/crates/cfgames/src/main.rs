fn main() {
    std::process::exit(cfgames::run())
}
