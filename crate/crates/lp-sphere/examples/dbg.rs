include!("/tmp/mp_cases.rs");

fn main() {
    use lp_sphere::specfun::*;
    let mut worst = 0.0f64;
    let mut worst_case = (0i32, 0.0f64);
    for &(t, x, want) in MP_CASES {
        let got = bessel_j(Order::from_twice_nu(t).unwrap(), x).unwrap();
        let err = (got - want).abs();
        if err > worst {
            worst = err;
            worst_case = (t, x);
        }
        if err > 1e-12 {
            println!("FAIL 2nu={t} x={x}: got {got:e} want {want:e} err {err:e}");
        }
    }
    println!("worst abs error: {worst:e} at 2nu={} x={}", worst_case.0, worst_case.1);
}
