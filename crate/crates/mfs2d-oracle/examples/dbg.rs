use mfs2d_oracle::*;
fn p(name: &str, v: &Bf) {
    println!("{name} = {:.17e}", v.to_f64());
}
fn main() {
    let t0 = std::time::Instant::now();
    p("J5(2)", &bessel_j_ref(5, &Bf::from_i64(2)));
    p("Y0(2)", &bessel_y_ref(0, &Bf::from_i64(2)));
    p("J3(10)", &bessel_j_ref(3, &Bf::from_i64(10)));
    p("Y3(10)", &bessel_y_ref(3, &Bf::from_i64(10)));
    p("J10(5)", &bessel_j_ref(10, &Bf::from_i64(5)));
    let x75 = Bf::parse_decimal("7.5");
    p("J10(7.5)", &bessel_j_ref(10, &x75));
    p("Y10(7.5)", &bessel_y_ref(10, &x75));
    p("Y10(5)", &bessel_y_ref(10, &Bf::from_i64(5)));
    p("Y50(2)", &bessel_y_ref(50, &Bf::from_i64(2)));
    let j1500 = bessel_j_ref(1500, &Bf::from_i64(500));
    println!("ln|J1500(500)| = {:.17e}, sign {}", ln_abs_f64(&j1500), sign_f64(&j1500));
    let y1500 = bessel_y_ref(1500, &Bf::from_i64(625));
    println!("ln|Y1500(625)| = {:.17e}, sign {}", ln_abs_f64(&y1500), sign_f64(&y1500));
    let i1500 = iax_ref(&Bf::from_i64(1500), &Bf::from_i64(500));
    p("I_1500(500)", &i1500);
    // J200(1), J100(50) logs for asymptotic tests
    let j200 = bessel_j_ref(200, &Bf::from_i64(1));
    println!("ln|J200(1)| = {:.17e}", ln_abs_f64(&j200));
    let j100 = bessel_j_ref(100, &Bf::from_i64(50));
    println!("ln|J100(50)| = {:.17e}, sign {}", ln_abs_f64(&j100), sign_f64(&j100));
    // s_hat(10, 5, 1.5) = (i pi/2) (J10(7.5) + i Y10(7.5)) J10(5)
    let j105 = bessel_j_ref(10, &Bf::from_i64(5));
    let j1075 = bessel_j_ref(10, &x75);
    let y1075 = bessel_y_ref(10, &x75);
    let half_pi = pi() / &Bf::from_i64(2);
    // (i)(J + iY) = -Y + iJ  => s_hat = pi/2 * J10(5) * (-Y10(7.5) + i J10(7.5))
    let re = &(&half_pi * &j105) * &(-y1075.clone());
    let im = &(&half_pi * &j105) * &j1075;
    println!("s_hat(10,5,1.5) = {:.17e} + {:.17e} i", re.to_f64(), im.to_f64());
    // v_hat(70) for k=8, rho=1.2: -(1/4) Y70(9.6) J70(8)
    let x96 = Bf::parse_decimal("9.6");
    let v70 = -(&(&(&bessel_y_ref(70, &x96) * &bessel_j_ref(70, &Bf::from_i64(8))) / &Bf::from_i64(4))).clone();
    println!("vhat70(k=8,rho=1.2) = {:.17e}", v70.to_f64());
    eprintln!("elapsed {:?}", t0.elapsed());
}
