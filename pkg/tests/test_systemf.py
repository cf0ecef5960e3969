import random

from bindcore import (
    bind_var,
    box,
    box_var,
    box_vars,
    eq_vars,
    name_of,
    new_var,
    subst,
    unbind,
    unbox,
)
from bindcore.oracle import convert, debruijn, named
from bindcore.parser import parse_term
from bindcore.systemf import (
    StepBudgetExceeded,
    TeAbs,
    TeApp,
    TeLam,
    TeSpe,
    TeVar,
    TyAll,
    TyArr,
    TyVar,
    _TeAbs,
    _TeApp,
    _TeLam,
    _TeSpe,
    _TeVar,
    _TyAll,
    _TyArr,
    _TyVar,
    eq_te,
    eq_ty,
    hnf,
    lift_te,
    lift_ty,
    nf,
    print_te,
    print_ty,
    update_names,
)
from church import church, mult_term
from gen import TermGen, free_split


def worked_example():
    """The application combinator and its type, built with smart constructors."""
    X = new_var(TyVar, "X")
    Y = new_var(TyVar, "Y")
    f = new_var(TeVar, "f")
    a = new_var(TeVar, "a")
    x_arr_y = _TyArr(_TyVar(X), _TyVar(Y))
    appl_ty = _TyAll(bind_var(X, _TyAll(bind_var(Y, _TyArr(x_arr_y, x_arr_y)))))
    appl_te = _TeLam(
        bind_var(
            X,
            _TeLam(
                bind_var(
                    Y,
                    _TeAbs(
                        x_arr_y,
                        bind_var(
                            f,
                            _TeAbs(
                                _TyVar(X),
                                bind_var(a, _TeApp(_TeVar(f), _TeVar(a))),
                            ),
                        ),
                    ),
                )
            ),
        )
    )
    return appl_te, appl_ty


# --- smart constructors and lifting ---------------------------------------------


def test_smart_ctor_arrow():
    X, Y = new_var(TyVar, "X"), new_var(TyVar, "Y")
    t = unbox(_TyArr(_TyVar(X), _TyVar(Y)))
    assert isinstance(t, TyArr)
    assert isinstance(t.dom, TyVar) and eq_vars(t.dom.var, X)
    assert isinstance(t.cod, TyVar) and eq_vars(t.cod.var, Y)


def test_te_var_is_box_var():
    x = new_var(TeVar, "x")
    assert _TeVar(x) is box_var(x)


def test_lift_ty_base_case():
    x = new_var(TyVar, "X")
    assert lift_ty(TyVar(x)) is box_var(x)


def test_worked_example_unboxes():
    appl_te, appl_ty = worked_example()
    assert print_ty(unbox(appl_ty)) == "∀X.∀Y.((X ⇒ Y) ⇒ (X ⇒ Y))"
    assert print_te(unbox(appl_te)) == "ΛX.ΛY.λf:(X ⇒ Y).λa:X.(f a)"


def test_lift_round_trip_alpha_equal():
    appl_te, appl_ty = worked_example()
    te, ty = unbox(appl_te), unbox(appl_ty)
    assert eq_te(unbox(lift_te(te)), te)
    assert eq_ty(unbox(lift_ty(ty)), ty)


def test_lift_vars_are_free_vars():
    x = new_var(TeVar, "x")
    y = new_var(TeVar, "y")
    t = TeApp(TeVar(x), TeVar(y))
    assert {v.key for v in box_vars(lift_te(t))} == {x.key, y.key}


def test_lift_round_trip_random():
    rng = random.Random(5150)
    g = TermGen(rng, max_depth=6, max_size=40)
    for _ in range(60):
        t, _ = g.sample()
        assert eq_te(unbox(lift_te(t)), t)


# --- normalization ----------------------------------------------------------------


def _id_abs(a_var):
    x = new_var(TeVar, "x")
    return unbox(_TeAbs(_TyVar(a_var), bind_var(x, _TeVar(x))))


def test_hnf_single_beta():
    A = new_var(TyVar, "A")
    y = new_var(TeVar, "y")
    r = hnf(TeApp(_id_abs(A), TeVar(y)))
    assert isinstance(r, TeVar) and eq_vars(r.var, y)


def test_hnf_type_beta():
    # ((Lam X. fun x:X.x) [B])  ->  fun x:B.x
    B = new_var(TyVar, "B")
    X = new_var(TyVar, "X")
    x = new_var(TeVar, "x")
    poly_id = unbox(_TeLam(bind_var(X, _TeAbs(_TyVar(X), bind_var(x, _TeVar(x))))))
    r = hnf(TeSpe(poly_id, TyVar(B)))
    assert eq_te(r, _id_abs(B))


def test_hnf_stops_at_binders():
    A = new_var(TyVar, "A")
    x = new_var(TeVar, "x")
    inner_redex = _TeApp(box(_id_abs(A)), _TeVar(x))
    t = unbox(_TeAbs(_TyVar(A), bind_var(x, inner_redex)))
    r = hnf(t)
    assert r is t  # no reduction under the binder


def test_nf_single_beta():
    A = new_var(TyVar, "A")
    y = new_var(TeVar, "y")
    r = nf(TeApp(_id_abs(A), TeVar(y)))
    assert isinstance(r, TeVar) and eq_vars(r.var, y)


def test_nf_reduces_under_binder():
    A = new_var(TyVar, "A")
    x = new_var(TeVar, "x")
    t = unbox(_TeAbs(_TyVar(A), bind_var(x, _TeApp(box(_id_abs(A)), _TeVar(x)))))
    assert eq_te(nf(t), _id_abs(A))


def test_nf_church_product():
    r = nf(mult_term(2, 3))
    assert eq_te(r, church(6))
    nm = convert.te_to_named(mult_term(2, 3))
    assert debruijn.alpha_eq(named.oracle_nf(nm), convert.te_to_named(r))


def test_nf_budget():
    A = new_var(TyVar, "A")
    x = new_var(TeVar, "x")
    delta = unbox(_TeAbs(_TyVar(A), bind_var(x, _TeApp(_TeVar(x), _TeVar(x)))))
    try:
        nf(TeApp(delta, delta), max_steps=64)
        assert False, "expected the budget to run out"
    except StepBudgetExceeded as e:
        assert e.steps == 64


def test_hnf_is_prefix_of_nf():
    rng = random.Random(777)
    g = TermGen(rng, max_depth=6, max_size=40)
    for _ in range(60):
        t, _ = g.sample()
        a = convert.te_to_named(nf(hnf(t)))
        b = convert.te_to_named(nf(t))
        assert debruijn.alpha_eq(a, b)


# --- printing ---------------------------------------------------------------------


def test_print_ty_forall_arrow():
    X = new_var(TyVar, "X")
    t = unbox(_TyAll(bind_var(X, _TyArr(_TyVar(X), _TyVar(X)))))
    assert print_ty(t) == "∀X.(X ⇒ X)"
    assert print_ty(t, ascii=True) == "all X.(X => X)"


def test_print_var_name():
    x = new_var(TyVar, "X")
    assert print_ty(TyVar(x)) == "X"


def test_print_spe_brackets():
    B = new_var(TyVar, "B")
    X = new_var(TyVar, "X")
    x = new_var(TeVar, "x")
    poly_id = unbox(_TeLam(bind_var(X, _TeAbs(_TyVar(X), bind_var(x, _TeVar(x))))))
    assert print_te(TeSpe(poly_id, TyVar(B))) == "(ΛX.λx:X.x [B])"


# --- alpha equality ---------------------------------------------------------------


def test_eq_ty_alpha():
    X, Y = new_var(TyVar, "X"), new_var(TyVar, "Y")
    all_x = unbox(_TyAll(bind_var(X, _TyVar(X))))
    all_y = unbox(_TyAll(bind_var(Y, _TyVar(Y))))
    assert eq_ty(all_x, all_y)
    all_xx = unbox(_TyAll(bind_var(X, _TyArr(_TyVar(X), _TyVar(X)))))
    assert not eq_ty(all_x, all_xx)


def test_eq_te_shadowing_sentinel():
    A = new_var(TyVar, "A")
    x1, x2, y = new_var(TeVar, "x"), new_var(TeVar, "x"), new_var(TeVar, "y")
    lam_xx = unbox(
        _TeAbs(_TyVar(A), bind_var(x1, _TeAbs(_TyVar(A), bind_var(x2, _TeVar(x2)))))
    )
    lam_xy = unbox(
        _TeAbs(_TyVar(A), bind_var(x1, _TeAbs(_TyVar(A), bind_var(y, _TeVar(y)))))
    )
    assert eq_te(lam_xx, lam_xy)
    # but the K combinator differs from the identity-dropping one
    lam_k = unbox(
        _TeAbs(_TyVar(A), bind_var(x1, _TeAbs(_TyVar(A), bind_var(y, _TeVar(x1)))))
    )
    assert not eq_te(lam_xx, lam_k)


def test_eq_te_distinct_free_vars():
    x, y = new_var(TeVar, "x"), new_var(TeVar, "y")
    assert eq_te(TeVar(x), TeVar(x))
    assert not eq_te(TeVar(x), TeVar(y))


def test_eq_coincides_with_canonical_form():
    rng = random.Random(31337)
    g = TermGen(rng, max_depth=6, max_size=40)
    for _ in range(40):
        t, _ = g.sample()
        u, _ = g.sample()
        same = eq_te(t, u)
        assert same == debruijn.alpha_eq(convert.te_to_named(t), convert.te_to_named(u))
        # update_names yields an alpha-equal term, and eq_te agrees
        t2 = update_names(t)
        assert eq_te(t, t2)
        assert debruijn.alpha_eq(convert.te_to_named(t), convert.te_to_named(t2))


# --- visual capture and renaming ---------------------------------------------------


def make_visual_capture():
    """Substitution plants a free "w" under a binder still named "w"."""
    A = new_var(TyVar, "A")
    v = new_var(TeVar, "v")
    w = new_var(TeVar, "w")
    # t0 = fun w:A.(v w), with v free
    t0 = unbox(_TeAbs(_TyVar(A), bind_var(w, _TeApp(_TeVar(v), _TeVar(w)))))
    b = unbox(bind_var(v, lift_te(t0)))
    intruder = new_var(TeVar, "w")
    return subst(b, TeVar(intruder)), intruder


def test_update_names_fixes_visual_capture():
    captured, intruder = make_visual_capture()
    shown = print_te(captured)
    assert shown == "λw:A.(w w)"  # two distinct variables, one name
    fixed = update_names(captured)
    assert eq_te(fixed, captured)
    shown_fixed = print_te(fixed)
    assert shown_fixed == "λw0:A.(w w0)"
    # the reparse is alpha-equal to the term we printed
    te_frees, ty_frees = free_split(fixed)
    back = parse_term(shown_fixed, free_te=te_frees, free_ty=ty_frees)
    assert eq_te(back, captured)


def test_update_names_noop_without_clashes():
    appl_te, _ = worked_example()
    te = unbox(appl_te)
    assert print_te(update_names(te)) == print_te(te)


def test_update_names_idempotent():
    captured, _ = make_visual_capture()
    once = update_names(captured)
    twice = update_names(once)
    assert print_te(once) == print_te(twice)


def test_bound_substitution_matches_oracle():
    # binding a free variable and substituting equals the reference
    # capture-avoiding substitution on converted terms
    rng = random.Random(60904)
    g = TermGen(rng, max_depth=5, max_size=35)
    done = 0
    while done < 60:
        t, ctx = g.sample()
        u, _ = g.sample()
        te_frees, _ = free_split(t)
        if not te_frees:
            continue
        x = rng.choice(te_frees)
        binder = unbox(bind_var(x, lift_te(t)))
        got = subst(binder, u)
        want = named.subst_te(
            convert.te_to_named(t),
            convert.qualified_name(x),
            convert.te_to_named(u),
        )
        assert debruijn.alpha_eq(convert.te_to_named(got), want)
        done += 1


def test_eq_te_equivalence_relation_sampled():
    rng = random.Random(3)
    g = TermGen(rng, max_depth=5, max_size=30)
    for _ in range(20):
        t, _ = g.sample()
        t1 = update_names(t)
        t2 = update_names(t1)
        assert eq_te(t, t)  # reflexive
        assert eq_te(t, t1) and eq_te(t1, t)  # symmetric on the sampled pair
        assert eq_te(t, t1) and eq_te(t1, t2) and eq_te(t, t2)  # transitive
