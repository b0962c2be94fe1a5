use hodge_core::phase::Caps;
use hodge_core::psi::point_partition;
use hodge_core::virasoro::point_operator;

#[test]
fn point_partition_is_annihilated() {
    let caps = Caps { max_degree: 8, max_weight: 8, max_hbar: 2 };
    let z = point_partition(caps);
    for k in -1..=2 {
        let op = point_operator(k, 8).unwrap();
        let r = op.apply(&z);
        let mut determined = 0;
        for (m, h, c) in r.determined() {
            assert!(c.is_zero(), "L_{k} Z has {c} at hbar^{h} {m}");
            determined += 1;
        }
        assert!(determined > 0 || r.value.is_empty());
    }
}
