fn main() {
    std::process::exit(swalg::run(std::env::args_os()));
}
