use nashorder_bench::{curve, curve_arc, hypersurface_algebra, presentation, sampler};
use nashorder_core::blowup::{nash_sequence, NashOptions};
use nashorder_core::contact::phi_sample;
use nashorder_core::{ord_d, ExtRational, FieldSpec, Point};

#[test]
fn benchmarked_workloads_give_known_values() {
    let f2 = FieldSpec::Prime(2);
    let opts = NashOptions {
        max_steps: 64,
        ..NashOptions::default()
    };
    let report = nash_sequence(
        &curve(2, 3, FieldSpec::Rationals),
        &curve_arc(2, 3, 8, FieldSpec::Rationals),
        opts,
    )
    .unwrap();
    assert_eq!(report.rho, Some(24));

    let e = ord_d(&presentation(2, 5, f2), &Point::origin(1)).unwrap();
    assert_eq!(e.ord_d.to_string(), "4");

    let g = hypersurface_algebra(2, 3, f2).diff_closure();
    let sample = phi_sample(&g, &Point::origin(2), &sampler(2, 3, f2, 20)).unwrap();
    assert_eq!(sample.min(), &ExtRational::integer(2));
}
