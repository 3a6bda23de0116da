use monomul::core::{gen_block_table, minimize_heuristic, BlockShape, Cover, Cube, Provenance};
use monomul::emit::pla::PlaErrorKind;
use monomul::emit::{read_pla, write_pla};
use proptest::prelude::*;

fn cover() -> impl Strategy<Value = Cover> {
    (1u32..=16, 1u32..=16).prop_flat_map(|(n_in, n_out)| {
        let cube = (any::<u32>(), any::<u32>(), 1u32..(1 << n_out))
            .prop_map(move |(v, care, o)| Cube::new(v, care & ((1 << n_in) - 1), o));
        prop::collection::vec(cube, 0..32)
            .prop_map(move |cubes| Cover::new(n_in, n_out, cubes, Provenance::External).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn write_then_read_is_identity(c in cover()) {
        let text = write_pla(&c);
        let back = read_pla(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_pla(&back), text);
    }
}

#[test]
fn minimized_block_survives_round_trip() {
    let f = gen_block_table(BlockShape::new(4, 4, 8)).unwrap();
    let mut c = minimize_heuristic(&f);
    let back = read_pla(&write_pla(&c)).unwrap();
    c = Cover::new(
        c.n_in(),
        c.n_out(),
        c.cubes().to_vec(),
        Provenance::External,
    )
    .unwrap();
    assert_eq!(back, c);
}

#[test]
fn reports_line_of_bad_cube() {
    let err = read_pla(".i 2\n.o 1\n.p 2\n1- 1\n1x 1\n.e\n").unwrap_err();
    assert_eq!(err.line, 5);
    assert!(
        matches!(err.kind, PlaErrorKind::InvalidSymbol(_)),
        "{err:?}"
    );
}
