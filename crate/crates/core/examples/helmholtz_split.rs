//! Compressional/shear split of a superposition of plane waves sampled on
//! an annulus.

use elastic_corners::elastic::{helmholtz_split, Direction, GridField, LameParameters, PlaneWave, SplitReport, WaveKind};

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(1.0, 1.0)?;
    let k = p.wavenumbers(3.0)?;
    let wp = PlaneWave::new(WaveKind::P, Direction::from_angle(0.4), k);
    let ws = PlaneWave::new(WaveKind::S, Direction::from_angle(2.0), k);
    let f = |x: [f64; 2]| {
        let (a, b) = (wp.value(x), ws.value(x));
        [a[0] + b[0], a[1] + b[1]]
    };
    let u = GridField::annulus([0.0, 0.0], 1.0, 2.0, 0.05, f);
    let (up, us) = helmholtz_split(&u, &k)?;
    let rep = SplitReport::compute(&u, &up, &us, &k);
    let mut err = [0.0f64; 2];
    for i in 0..u.values.len() {
        if up.mask[i] {
            let x = u.point(i % u.nx, i / u.nx);
            let (a, b) = (wp.value(x), ws.value(x));
            err[0] = err[0].max((up.values[i][0] - a[0]).norm().max((up.values[i][1] - a[1]).norm()));
            err[1] = err[1].max((us.values[i][0] - b[0]).norm().max((us.values[i][1] - b[1]).norm()));
        }
    }
    println!("{rep:?}");
    println!("max error against the exact P part {:.1e}, S part {:.1e}", err[0], err[1]);
    Ok(())
}
