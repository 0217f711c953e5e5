//! Recover sigma(n) from its Ramanujan expansion truncated at growing orders.

use rft_doppler::rft::divisor_sum_expansion;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4} {:>6} {:>12} {:>12} {:>12}", "n", "sigma", "Q=10", "Q=100", "Q=1000");
    for n in [1u64, 2, 6, 12, 17, 20] {
        let sigma: u64 = (1..=n).filter(|d| n % d == 0).sum();
        let cols: Vec<String> = [10, 100, 1000]
            .iter()
            .map(|&q| divisor_sum_expansion(n, q).map(|v| format!("{v:>12.5}")))
            .collect::<Result<_, _>>()?;
        println!("{n:>4} {sigma:>6} {}", cols.join(" "));
    }
    Ok(())
}
