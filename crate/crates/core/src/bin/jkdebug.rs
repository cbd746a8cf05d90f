use rmtfluct_core::basis::LinearStatistic;
use rmtfluct_core::mc::estimate_covariance;
use rmtfluct_core::samplers::EnsembleSpec;

fn main() {
    let spec = EnsembleSpec::Cue { n: 10 };
    let f = LinearStatistic::cosine_mode(2);
    let truth = 1.0;
    let mut covered = 0;
    let total = 400u64;
    let mut windows = vec![];
    let mut hits = vec![];
    for seed in 0..total {
        let est = estimate_covariance(&f, &f, &spec, 400, 1000 + seed).unwrap();
        let ok = (est.covariance - truth).abs() <= 3.0 * est.se;
        hits.push(ok);
        if ok { covered += 1; }
    }
    println!("overall coverage: {covered}/{total}");
    // find 100-seed windows with >= 99
    for start in 0..(total as usize - 100) {
        let c = hits[start..start + 100].iter().filter(|&&x| x).count();
        if c >= 99 { windows.push(start); }
    }
    println!("first windows with >=99/100: {:?}", &windows[..windows.len().min(6)]);

    // SE scaling with averaged seeds
    for n in [1200usize, 2400] {
        let mut acc = 0.0;
        for s in 0..8u64 {
            acc += estimate_covariance(&f, &f, &spec, n, 50 + s).unwrap().se;
        }
        println!("n={n}: mean se = {:.6}", acc / 8.0);
    }
}
