use salmon_core::algebra::Dims;
use salmon_core::rep::{
    centralizer_order, conjugacy_classes, enumerate_ssyt, isotypic_decomposition, kronecker_mult,
    mn_character, symmetric_power_dim, weyl_dimension, Partition,
};

fn factorial(n: u32) -> i128 {
    (1..=i128::from(n)).product()
}

#[test]
fn row_orthogonality_up_to_degree_seven() {
    for d in 1..=7 {
        let classes = conjugacy_classes(d);
        let parts = Partition::all(d);
        for l in &parts {
            for m in &parts {
                let s: i128 = classes
                    .iter()
                    .map(|c| {
                        c.class_size as i128
                            * i128::from(mn_character(l, &c.cycle_type).unwrap())
                            * i128::from(mn_character(m, &c.cycle_type).unwrap())
                    })
                    .sum();
                assert_eq!(s, if l == m { factorial(d) } else { 0 }, "{l} {m}");
            }
        }
    }
}

#[test]
fn column_orthogonality_up_to_degree_seven() {
    for d in 1..=7 {
        let parts = Partition::all(d);
        for c1 in &parts {
            for c2 in &parts {
                let s: i128 = parts
                    .iter()
                    .map(|l| {
                        i128::from(mn_character(l, c1).unwrap()) * i128::from(mn_character(l, c2).unwrap())
                    })
                    .sum();
                let expect = if c1 == c2 { centralizer_order(c1) as i128 } else { 0 };
                assert_eq!(s, expect);
            }
        }
    }
}

#[test]
fn character_degree_is_the_number_of_standard_tableaux() {
    for d in 1..=7 {
        let id = Partition::new(vec![1; d as usize]).unwrap();
        for shape in Partition::all(d) {
            // standard tableaux = semistandard fillings of content (1,...,1)
            let standard = enumerate_ssyt(&shape, d as usize)
                .into_iter()
                .filter(|f| f.weight(d as usize).iter().all(|&w| w == 1))
                .count();
            assert_eq!(mn_character(&shape, &id).unwrap(), standard as i64);
        }
    }
}

#[test]
fn semistandard_counts_equal_weyl_dimensions() {
    for d in 1..=6 {
        for shape in Partition::all(d) {
            for n in 1..=4 {
                assert_eq!(
                    enumerate_ssyt(&shape, n).len() as u64,
                    weyl_dimension(&shape, n),
                    "{shape} in {n} letters"
                );
            }
        }
    }
}

#[test]
fn kronecker_symmetries() {
    for d in 1..=5 {
        let parts = Partition::all(d);
        for a in &parts {
            for b in &parts {
                for c in &parts {
                    let g = kronecker_mult(a, b, c).unwrap();
                    assert_eq!(g, kronecker_mult(b, c, a).unwrap());
                    assert_eq!(g, kronecker_mult(b, a, c).unwrap());
                    assert_eq!(g, kronecker_mult(&a.conjugate(), &b.conjugate(), c).unwrap());
                }
            }
        }
    }
}

#[test]
fn isotypic_dimensions_add_up_to_the_symmetric_power() {
    for (dims, max_d) in [(Dims::new(2, 2, 2), 6), (Dims::new(2, 2, 3), 5), (Dims::new(3, 3, 4), 4)] {
        for d in 1..=max_d {
            let total: u128 = isotypic_decomposition(d, dims)
                .unwrap()
                .iter()
                .map(|c| u128::from(c.component_dim))
                .sum();
            assert_eq!(total, symmetric_power_dim(dims.volume(), d), "degree {d} at {dims}");
        }
    }
}

#[test]
fn no_degree_five_component_is_missing_at_334() {
    let total: u128 = isotypic_decomposition(5, Dims::new(3, 3, 4))
        .unwrap()
        .iter()
        .map(|c| u128::from(c.component_dim))
        .sum();
    assert_eq!(total, 658_008);
}
