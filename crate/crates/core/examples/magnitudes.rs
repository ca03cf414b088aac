//! Certified comparisons between numbers far too large to write down.

use gs_growth::exact::{Exponent, Magnitude};

fn main() -> gs_growth::Result<()> {
    let m = 101u64;
    let r = Magnitude::power(40, Exponent::int(8 * m * m * m));
    println!("r = {r}, about 2^{:.4e}", r.approx_log2());

    // 2^{2^{46}} dwarfs r even though both have astronomically many digits.
    let cap = Magnitude::pow2_pow2(46);
    println!("r < 2^(2^46): {}", r.lt(&cap)?);

    // 1024 log2(3) is just above 1623.
    let a = Magnitude::power(3, Exponent::pow2(10));
    let b = Magnitude::pow2(1623);
    let c = Magnitude::pow2(1624);
    println!("3^1024 vs 2^1623: {:?}", a.cmp_exact(&b)?);
    println!("3^1024 vs 2^1624: {:?}", a.cmp_exact(&c)?);

    // (1 + 2^-10)^(2^64) against 2^(400 * 64^3).
    let n = Exponent::pow2(64);
    let c_n = Magnitude::power(1025, n.clone()).mul(&Magnitude::power(2, n.mul_int(&(-10).into())));
    println!("c^n > 2^(400*64^3): {}", Magnitude::pow2(400 * 64u64.pow(3)).lt(&c_n)?);
    println!("json: {}", serde_json::to_string(&r.to_json()).unwrap());
    Ok(())
}
