use proptest::prelude::*;

use prk_lab::embeddings::{embed, validate_nd, Logic};
use prk_lab::generate::{gen_nd, gen_ty, rng, GenConfig, TermGen};
use prk_lab::intuitionistic::{check_prjv, is_intuitionistic};
use prk_lab::reduction::{erase, normal_form, normalize, one_step_reducts, ustep, Status, Strategy, DEFAULT_FUEL};
use prk_lab::surface::{nd_to_string, parse_mty, parse_nd, parse_term, parse_type};
use prk_lab::syntax::pretty::{mty_to_string, term_to_string, ty_to_string, Style};
use prk_lab::typecheck::check;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn types_read_back(seed in any::<u64>()) {
        let atoms = vec!["a".to_string(), "b".to_string()];
        let a = gen_ty(&mut rng(seed), 3, &atoms);
        for style in [Style::Ascii, Style::Unicode] {
            prop_assert_eq!(parse_type(&ty_to_string(&a, style)).unwrap(), a.clone());
        }
    }

    #[test]
    fn generated_terms_check_and_read_back(seed in any::<u64>()) {
        let j = TermGen::new(seed, GenConfig::default()).typed(true);
        prop_assert!(check(&j.ctx, &j.term, &j.ty).is_ok());
        prop_assert_eq!(parse_term(&term_to_string(&j.term, Style::Ascii)).unwrap(), j.term.clone());
        prop_assert_eq!(parse_mty(&mty_to_string(&j.ty, Style::Ascii)).unwrap(), j.ty);
    }

    #[test]
    fn every_reduct_keeps_its_type(seed in any::<u64>()) {
        let j = TermGen::new(seed, GenConfig::default()).typed(true);
        for (r, t) in one_step_reducts(&j.term, false) {
            prop_assert!(check(&j.ctx, &t, &j.ty).is_ok(), "{} at {:?}", r.rule, r.path);
        }
    }

    #[test]
    fn normal_forms_do_not_depend_on_strategy(seed in any::<u64>(), pick in any::<u64>()) {
        let j = TermGen::new(seed, GenConfig::default()).typed(true);
        let lo = normal_form(&j.term, Strategy::LeftmostOutermost, DEFAULT_FUEL, false);
        prop_assert_eq!(lo.status, Status::Normal);
        for s in [Strategy::RightmostInnermost, Strategy::Random(pick)] {
            let nf = normal_form(&j.term, s, DEFAULT_FUEL, false);
            prop_assert_eq!(&nf.term, &lo.term);
        }
        prop_assert!(check(&j.ctx, &lo.term, &j.ty).is_ok());
    }

    #[test]
    fn erased_steps_are_untyped_steps(seed in any::<u64>(), pick in any::<u64>()) {
        let j = TermGen::new(seed, GenConfig::default()).typed(true);
        let tr = normalize(&j.term, Strategy::Random(pick), DEFAULT_FUEL, false);
        let mut prev = erase(&tr.initial);
        for st in &tr.steps {
            let next = erase(&st.term);
            prop_assert!(ustep(&prev).contains(&next), "{}", st.redex.rule);
            prev = next;
        }
    }

    #[test]
    fn both_intuitionistic_checks_agree(seed in any::<u64>()) {
        let i = TermGen::new(seed, GenConfig::default()).instance();
        let direct = is_intuitionistic(&i.term, &i.xs) && check(&i.ctx, &i.term, &i.ty).is_ok();
        prop_assert_eq!(check_prjv(&i.xs, &i.ctx, &i.term, &i.ty), Ok(direct));
    }

    #[test]
    fn embedded_proofs_check(seed in any::<u64>(), classical in any::<bool>()) {
        let logic = if classical { Logic::NK } else { Logic::NJ };
        let d = gen_nd(&mut rng(seed), logic, 10);
        let seq = validate_nd(&d, logic).unwrap();
        let e = embed(&d, logic).unwrap();
        prop_assert_eq!(e.sequent.concl, seq.concl);
        prop_assert!(check(&e.ctx, &e.term, &e.ty).is_ok());
        prop_assert_eq!(parse_nd(&nd_to_string(&d.proof)).unwrap(), d.proof);
    }
}
