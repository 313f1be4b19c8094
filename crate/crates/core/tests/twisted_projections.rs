use hriesz::special_hermite::{phi_k_grid, project_k, twisted_conv, PlaneGridFn};
use num_complex::Complex64;

#[test]
fn gaussian_self_convolution_at_origin() {
    let g = PlaneGridFn::from_fn(8.0, 64, |z| {
        Complex64::new((-z.norm_sqr() / 4.0).exp(), 0.0)
    })
    .unwrap();
    let c = twisted_conv(&g, &g).unwrap();
    let two_pi = 2.0 * std::f64::consts::PI;
    assert!((c.at_origin().re - two_pi).abs() < 1e-6 * two_pi);
    assert!(c.at_origin().im.abs() < 1e-9);
}

#[test]
fn laguerre_functions_are_orthogonal_projections() {
    let f = phi_k_grid(8.0, 64, 0)
        .unwrap()
        .add(&phi_k_grid(8.0, 64, 1).unwrap())
        .unwrap();
    let p0 = project_k(&f, 0).unwrap();
    let p1 = project_k(&f, 1).unwrap();
    let phi0 = phi_k_grid(8.0, 64, 0).unwrap();
    let phi1 = phi_k_grid(8.0, 64, 1).unwrap();
    assert!(p0.max_abs_diff(&phi0).unwrap() < 1e-6);
    assert!(p1.max_abs_diff(&phi1).unwrap() < 1e-6);
    assert!(project_k(&p0, 1).unwrap().max_abs() < 1e-6);
}
