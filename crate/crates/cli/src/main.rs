fn main() {
    println!("g2kit placeholder");
}
