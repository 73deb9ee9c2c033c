fn main() {
    std::process::exit(bfly::run());
}
