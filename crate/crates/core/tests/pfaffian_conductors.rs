use adjlab_core::ideal::Ideal;
use adjlab_core::poly::{Field, MonomialOrder, PrimeField};
use adjlab_core::singularity::{conductor_on_x, AffineSubscheme, AlternatingMatrix, LciSlice};

fn five<F: Field>(field: F) -> (AlternatingMatrix<F>, AffineSubscheme<F>) {
    let m = AlternatingMatrix::generic(5, field, MonomialOrder::GrevLex).unwrap();
    let gens = m.sub_pfaffians(1).unwrap().into_iter().map(|(_, p)| p).collect();
    let x = AffineSubscheme::new(Ideal::new(m.ring(), gens).unwrap()).unwrap();
    (m, x)
}

#[test]
fn plucker_variety_has_dimension_seven() {
    let (_, x) = five(PrimeField::new(32003).unwrap());
    assert_eq!(x.dim(), 7);
    assert_eq!(x.codim(), 3);
}

#[test]
fn triple_conductor_is_complementary_entry() {
    let (m, x) = five(PrimeField::new(32003).unwrap());
    let p = m.sub_pfaffians(1).unwrap();
    let y = LciSlice::from_generators(&x, vec![p[0].1.clone(), p[1].1.clone(), p[2].1.clone()]).unwrap();
    let cond = conductor_on_x(&y).unwrap();
    let p123 = m.sub_pfaffian(&[1, 2, 3]).unwrap();
    let want = x.ideal().sum(&Ideal::new(m.ring(), vec![p123]).unwrap()).unwrap();
    assert!(cond.equals(&want).unwrap());
}

#[test]
fn conductors_over_rationals_sum_to_entries() {
    let (m, x) = five(adjlab_core::poly::Rationals);
    let p = m.sub_pfaffians(1).unwrap();
    let mut total = x.ideal().clone();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                let y = LciSlice::from_generators(&x, vec![p[a].1.clone(), p[b].1.clone(), p[c].1.clone()]).unwrap();
                let cond = conductor_on_x(&y).unwrap();
                let comp = m.sub_pfaffian(&[a + 1, b + 1, c + 1]).unwrap();
                let want = x.ideal().sum(&Ideal::new(m.ring(), vec![comp]).unwrap()).unwrap();
                assert!(cond.equals(&want).unwrap(), "triple {a} {b} {c}");
                total = total.sum(&cond).unwrap();
            }
        }
    }
    let entries = m.sub_pfaffians(3).unwrap().into_iter().map(|(_, e)| e).collect();
    let want = x.ideal().sum(&Ideal::new(m.ring(), entries).unwrap()).unwrap();
    assert!(total.equals(&want).unwrap());
}
