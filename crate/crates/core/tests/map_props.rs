mod common;

use common::seeded;
use phkit::corpus::{ph_curves, random_line, random_word, rational_vector};
use phkit::moebius::{word_to_map, MoebiusFactor, MoebiusWord};
use phkit::planar::{complex_to_real_map, phi_from_psi};
use phkit::ratcalc::square_extract;
use phkit::text::parse_expr;
use phkit::{Field, RationalMap, Vars};
use proptest::prelude::*;
use rand::Rng;

fn psi_map(psi: &str) -> RationalMap {
    let phi = phi_from_psi(&parse_expr(psi, &Vars::new(["z"])).unwrap()).unwrap();
    complex_to_real_map(&phi, false).unwrap()
}

fn similarity(r: &mut impl Rng) -> RationalMap {
    let factors = vec![
        phkit::corpus::random_orthogonal(r, 2),
        MoebiusFactor::homothety(phkit::corpus::nonzero_rational(r)).unwrap(),
        MoebiusFactor::Translation(rational_vector(r, 2)),
    ];
    word_to_map(&MoebiusWord::new(Some(2), factors).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn line_speed_form_splits(mut r in seeded(), which in 0usize..3) {
        let map = match which {
            0 => psi_map("(z^2+1)/z"),
            1 => psi_map("z^2 + (1+i)*z"),
            _ => word_to_map(&random_word(&mut r, 2, 2)).unwrap(),
        };
        let d = loop {
            let d = rational_vector(&mut r, 2);
            if d.iter().any(|x| !x.is_zero()) {
                break d;
            }
        };
        let form = map.line_speed_form(&d).unwrap();
        let (g, h) = square_extract(&form, &["t"]).unwrap();
        prop_assert_eq!(g.mul(&h.mul(&h)), form);
    }

    #[test]
    fn composition_closure(mut r in seeded(), n in 2usize..=3) {
        let f = word_to_map(&random_word(&mut r, n, 2)).unwrap();
        let g = word_to_map(&random_word(&mut r, n, 2)).unwrap();
        let fg = f.compose(&g).unwrap();
        prop_assert!(fg.is_ph_preserving().unwrap().is_preserving());
    }

    #[test]
    fn polynomial_maps_keep_polynomial_curves(mut r in seeded(), which in 0usize..3) {
        let map = match which {
            0 => psi_map("z + 2"),
            1 => psi_map("z^2 - i*z + 1"),
            _ => similarity(&mut r),
        };
        prop_assert!(map.is_polynomial());
        prop_assert!(map.is_ph_preserving().unwrap().is_preserving());
        let mut curves = ph_curves(&mut r, 2, 0);
        curves.retain(|(_, c)| c.components().iter().all(|x| x.is_polynomial()));
        curves.push(("line".into(), random_line(&mut r, 2)));
        for (name, c) in curves {
            let img = map.compose_curve(&c).unwrap();
            prop_assert!(img.components().iter().all(|x| x.is_polynomial()), "{}", name);
            let sigma = img.is_ph().expect("image is PH");
            prop_assert!(sigma.expand().is_polynomial(), "{}", name);
        }
    }
}
