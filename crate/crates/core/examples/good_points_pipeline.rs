//! Rational points on a quadric cut by a hyperplane: find an orthogonal
//! configuration, assemble a subspace on which the quadric is good, and
//! parametrize points that avoid a given form.

use forms_density::algebra::{Field, Form, FormSystem, Rationals};
use forms_density::construct::{run_pipeline, AssembleOptions, PipelineOptions};
use forms_density::diagonal::SearchOptions;

fn main() -> forms_density::Result<()> {
    let q = Rationals;
    let n = 12;
    let linear = Form::parse_with_vars("x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8 + x9 + x10 + x11 + x12", q, n)?;
    let quadric = Form::parse_with_vars(
        "x1^2 - 2 x2^2 + 3 x3^2 - x4^2 + x5^2 - 3 x6^2 + 2 x7^2 - x8^2 + x9^2 - 5 x10^2 + x11^2 + 7 x12^2",
        q,
        n,
    )?;
    let sys = FormSystem::new(q, n, vec![linear, quadric])?;
    let avoid = Form::parse_with_vars("x1 + 2 x5", q, n)?;
    let opts = PipelineOptions {
        m: 8,
        count: 5,
        assemble: AssembleOptions { phis: None, search: SearchOptions { budget: 100_000, seed: 1 } },
    };
    let r = run_pipeline(&sys, Some(&avoid), &opts)?;
    let d = &r.good.decomposition;
    println!(
        "good on L: roles x = {}, y = {}, z = {}; alpha = {}, beta = {}, gamma = {}",
        d.roles.x, d.roles.y, d.roles.z, q.format_elem(&d.alpha), q.format_elem(&d.beta), q.format_elem(&d.gamma)
    );
    for p in &r.points {
        let s: Vec<String> = p.iter().map(|c| q.format_elem(c)).collect();
        println!("({})", s.join(", "));
    }
    Ok(())
}
