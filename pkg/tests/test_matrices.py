import pytest

from compalg.errors import (
    NotDiagonalError,
    NotSplitFormError,
    ShapeError,
    UnexpectedZeroDivisorError,
)
from compalg.fields import QQ, PrimeField, QuadExt
from compalg.matrices import (
    CompMatrix,
    FieldMatrix,
    flatten_split,
    is_invertible,
    is_invertible_via_flatten,
    is_invertible_via_study,
    mat2_matrix_to_quat,
    quat_matrix_to_mat2,
    skew_column_rank,
    skew_solve,
    split_pair,
    study_det,
    symplectic_rep,
    unflatten_split,
)
from compalg.quaternion import Mat2Algebra, QuatAlgebra
from compalg.rng import SplitMix64
from compalg.serialize import matrix_from_json
from compalg.corpus import load_fixture

HQ = QuatAlgebra(QQ, -1, -1)
F3 = PrimeField(3)


def random_matrix(alg, m, n, rng, bound=2):
    def elem():
        if isinstance(alg.field, PrimeField):
            return alg.element([rng.randint(0, alg.field.p - 1) for _ in range(4)])
        return alg.element([rng.randint(-bound, bound) for _ in range(4)])

    return CompMatrix(alg, [[elem() for _ in range(n)] for _ in range(m)])


def test_identity_and_one_by_one():
    rng = SplitMix64(1)
    Z = random_matrix(HQ, 2, 2, rng)
    assert CompMatrix.identity(HQ, 2) * Z == Z
    x = HQ.element((1, 2, 3, 4))
    y = HQ.element((2, 0, -1, 1))
    assert (CompMatrix(HQ, [[x]]) * CompMatrix(HQ, [[y]])).entries[0][0] == x * y


def test_right_scalar_action_associates():
    rng = SplitMix64(2)
    for _ in range(50):
        Z = random_matrix(HQ, 2, 2, rng)
        W = random_matrix(HQ, 2, 2, rng)
        q = HQ.element([rng.randint(-2, 2) for _ in range(4)])
        assert (Z * W).scale_right(q) == Z * W.scale_right(q)


def test_symplectic_rep_of_j():
    L = HQ.quad_subfield()
    rep = symplectic_rep(CompMatrix(HQ, [[HQ.v()]]))
    assert rep == FieldMatrix(L, [[0, -1], [1, 0]])


def test_symplectic_rep_identity():
    for n in (1, 2, 3):
        rep = symplectic_rep(CompMatrix.identity(HQ, n))
        assert rep == FieldMatrix.identity(HQ.quad_subfield(), 2 * n)


@pytest.mark.parametrize(
    "alg",
    [HQ, QuatAlgebra(QQ, 2, 5), QuatAlgebra.split_form(QQ), QuatAlgebra(F3, 1, -1)],
    ids=repr,
)
def test_symplectic_rep_is_homomorphism(alg):
    rng = SplitMix64(3)
    for _ in range(60):
        n = rng.randint(1, 3)
        Z = random_matrix(alg, n, n, rng)
        W = random_matrix(alg, n, n, rng)
        assert symplectic_rep(Z * W) == symplectic_rep(Z) * symplectic_rep(W)
        assert symplectic_rep(Z + W) == symplectic_rep(Z) + symplectic_rep(W)


def test_symplectic_rep_injective_sample():
    rng = SplitMix64(4)
    for _ in range(1000):
        Z = random_matrix(HQ, 2, 2, rng, bound=1)
        if not Z.is_zero():
            assert not symplectic_rep(Z).is_zero()


def test_det_basics():
    assert FieldMatrix.identity(QQ, 3).det() == QQ.one()
    M = FieldMatrix(QQ, [[1, 2], [3, 4]])
    assert M.det() == QQ.element(-2)


@pytest.mark.parametrize(
    "spec",
    [QQ, PrimeField(7), QuadExt(QQ, -1), QuadExt(PrimeField(5), 4), QuadExt(QQ, 1)],
    ids=repr,
)
def test_det_multiplicative(spec):
    rng = SplitMix64(5)

    def rand_entry():
        if spec == QQ:
            return spec.element(rng.randint(-3, 3))
        if isinstance(spec, PrimeField):
            return spec.element(rng.randint(0, spec.p - 1))
        if isinstance(spec.base, PrimeField):
            return spec.element((rng.randint(0, spec.base.p - 1), rng.randint(0, spec.base.p - 1)))
        return spec.element((rng.randint(-3, 3), rng.randint(-3, 3)))

    for _ in range(200):
        n = rng.randint(1, 3)
        M = FieldMatrix(spec, [[rand_entry() for _ in range(n)] for _ in range(n)])
        N = FieldMatrix(spec, [[rand_entry() for _ in range(n)] for _ in range(n)])
        assert (M * N).det() == M.det() * N.det()


def test_study_det_values():
    assert study_det(CompMatrix.identity(HQ, 2)) == QQ.one()
    z = HQ.element((2, 1, 0, 0))
    assert study_det(CompMatrix(HQ, [[z]])) == QQ.element(25)


def test_study_det_multiplicative_and_tau_fixed():
    rng = SplitMix64(6)
    for alg in (HQ, QuatAlgebra(QQ, 2, 5), QuatAlgebra(F3, 1, -1)):
        for _ in range(60):
            n = rng.randint(1, 2)
            Z = random_matrix(alg, n, n, rng)
            W = random_matrix(alg, n, n, rng)
            assert study_det(Z * W) == study_det(Z) * study_det(W)
            d = symplectic_rep(Z).det()
            assert d.conjugate() == d
            L = alg.quad_subfield()
            assert L.embed(study_det(Z)) == d * d


def test_flatten_identity_and_roundtrip():
    M2 = Mat2Algebra(QQ)
    flat = flatten_split(CompMatrix.identity(M2, 1))
    assert flat == FieldMatrix.identity(QQ, 2)
    z1 = matrix_from_json(load_fixture("z1")["matrix"])
    assert unflatten_split(flatten_split(z1), z1.algebra) == z1


def test_flatten_multiplicative():
    rng = SplitMix64(7)
    M2 = Mat2Algebra(F3)
    for _ in range(200):
        n = rng.randint(1, 3)
        Z = random_matrix(M2, n, n, rng)
        W = random_matrix(M2, n, n, rng)
        assert flatten_split(Z * W) == flatten_split(Z) * flatten_split(W)


def test_flatten_rejects_generic_algebra():
    with pytest.raises(NotSplitFormError):
        flatten_split(CompMatrix.identity(HQ, 1))


def test_split_pair_read_off_and_homomorphism():
    M2 = Mat2Algebra(QQ)
    ident = CompMatrix.identity(M2, 2)
    p1, p2 = split_pair(ident)
    assert p1 == FieldMatrix.identity(QQ, 2) and p2 == FieldMatrix.identity(QQ, 2)
    d = CompMatrix(M2, [[M2.element((2, 0, 0, 3))]])
    p1, p2 = split_pair(d)
    assert p1 == FieldMatrix(QQ, [[2]]) and p2 == FieldMatrix(QQ, [[3]])
    rng = SplitMix64(8)
    for _ in range(200):
        n = rng.randint(1, 3)

        def diag():
            return M2.element((rng.randint(-3, 3), 0, 0, rng.randint(-3, 3)))

        Z = CompMatrix(M2, [[diag() for _ in range(n)] for _ in range(n)])
        W = CompMatrix(M2, [[diag() for _ in range(n)] for _ in range(n)])
        z1, z2 = split_pair(Z)
        w1, w2 = split_pair(W)
        assert split_pair(Z * W) == (z1 * w1, z2 * w2)
    with pytest.raises(NotDiagonalError):
        split_pair(CompMatrix(M2, [[M2.element((0, 1, 0, 0))]]))


def test_is_invertible_basics():
    assert is_invertible(CompMatrix.identity(HQ, 2))
    assert not is_invertible(CompMatrix.zero(HQ, 2, 2))
    M2 = Mat2Algebra(QQ)
    singular_block = CompMatrix(M2, [[M2.element((1, 0, 0, 0))]])
    assert not is_invertible(singular_block)


def test_invertibility_paths_agree_on_split_f3():
    split3 = QuatAlgebra(F3, 1, -1)
    sample = [
        split3.element((1, 0, 0, 0)),
        split3.element((0, 1, 0, 0)),
        split3.element((1, 1, 0, 0)),
        split3.element((0, 0, 1, 2)),
        split3.element((2, 1, 1, 0)),
        split3.element((0, 0, 0, 0)),
        split3.element((1, 2, 0, 1)),
    ]
    rng = SplitMix64(9)
    for _ in range(10_000):
        Z = CompMatrix(
            split3, [[rng.choice(sample) for _ in range(2)] for _ in range(2)]
        )
        assert is_invertible_via_study(Z) == is_invertible_via_flatten(Z)


def test_mat2_quat_matrix_conversions_roundtrip():
    rng = SplitMix64(10)
    quat = QuatAlgebra.split_form(QQ)
    for _ in range(50):
        Z = random_matrix(quat, 2, 2, rng)
        back = mat2_matrix_to_quat(quat_matrix_to_mat2(Z), quat)
        assert back == Z


def test_skew_solve_equal_columns():
    cols = CompMatrix(HQ, [[HQ.element((1, 2, 0, 1)), HQ.element((1, 2, 0, 1))]])
    sol = skew_solve(cols)
    assert sol == (HQ.one(), -HQ.one())


def test_skew_solve_overdetermined_always_finds_relation():
    rng = SplitMix64(11)
    for _ in range(50):
        A = random_matrix(HQ, 2, 3, rng)
        sol = skew_solve(A)
        assert sol is not None and any(not c.is_zero() for c in sol)


def test_skew_solve_independent_columns():
    ident = CompMatrix.identity(HQ, 3)
    assert skew_solve(ident) is None
    assert skew_column_rank(ident) == 3


def test_skew_solve_rejects_split_algebra():
    split3 = QuatAlgebra(F3, 1, -1)
    with pytest.raises(UnexpectedZeroDivisorError):
        skew_solve(CompMatrix.identity(split3, 2))


def test_shape_errors():
    with pytest.raises(ShapeError):
        FieldMatrix(QQ, [[1, 2], [3]])
    with pytest.raises(ShapeError):
        FieldMatrix(QQ, [[1, 2]]) * FieldMatrix(QQ, [[1, 2]])
    with pytest.raises(ShapeError):
        study_det(CompMatrix(HQ, [[HQ.one(), HQ.one()]]))
