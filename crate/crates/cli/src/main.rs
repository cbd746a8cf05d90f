fn main() {
    println!("rmtfluct");
}
