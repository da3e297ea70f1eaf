use korbit::korbit::{orb_k, KOrbit};
use korbit::perm::{Permutation, PermutationGroup};

const C4_K2: [&str; 3] = [
    "k=2 n=4 size=4\n(1,2)\n(2,3)\n(3,4)\n(4,1)\n",
    "k=2 n=4 size=4\n(1,3)\n(2,4)\n(3,1)\n(4,2)\n",
    "k=2 n=4 size=4\n(1,4)\n(2,1)\n(3,2)\n(4,3)\n",
];

#[test]
fn cyclic_group_pairs_match_golden_files() {
    let c4 = PermutationGroup::generate(4, vec![Permutation::parse("[2,3,4,1]", 4).unwrap()], 10).unwrap();
    let orbits = orb_k(&c4, 2, 100).unwrap();
    let texts: Vec<String> = orbits.iter().map(KOrbit::to_korb).collect();
    assert_eq!(texts, C4_K2);
    for (x, text) in orbits.iter().zip(C4_K2) {
        assert_eq!(&KOrbit::parse_korb(text).unwrap(), x);
    }
}

#[test]
fn malformed_korb_reports_the_line() {
    let err = KOrbit::parse_korb("k=2 n=4 size=2\n(1,2)\n(1,x)\n").unwrap_err();
    assert!(matches!(err, korbit::Error::KorbFile { line: 3, .. }), "{err:?}");
    assert!(KOrbit::parse_korb("k=2 n=4 size=3\n(1,2)\n").is_err());
}
