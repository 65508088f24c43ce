import sympy as sp
from hypothesis import HealthCheck, assume, settings, strategies as st

from singular_forge.algebra import GaussianRational, RatMatrix, RationalFunction

settings.register_profile(
    "repo", max_examples=25, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria run")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({detail})")

Z = sp.Symbol("z")
z = RationalFunction.z()


def sym_scalar(x):
    return sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator)


def sym_rf(f):
    num = sum(sym_scalar(c) * Z**k for k, c in enumerate(f.num.c))
    den = sum(sym_scalar(c) * Z**k for k, c in enumerate(f.den.c))
    return sp.together(num / den)


def sym_matrix(m):
    return sp.Matrix([[sym_rf(f) for f in row] for row in m.rows])


def same_rf(f, expr) -> bool:
    return sp.simplify(sym_rf(f) - expr) == 0


gaussian = st.builds(
    lambda re, im, den: GaussianRational(re, im, den),
    st.integers(-3, 3), st.integers(-1, 1), st.sampled_from([1, 2, 3]),
)
small_points = st.sampled_from([0, 1, -1, 2, GaussianRational(0, 1)])


@st.composite
def rational_functions(draw, nonzero=False):
    f = RationalFunction.const(draw(gaussian))
    for _ in range(draw(st.integers(0, 3))):
        f = f + RationalFunction.pole(draw(small_points), draw(st.integers(1, 3)), draw(gaussian))
    if draw(st.booleans()):
        f = f + z ** draw(st.integers(1, 2)) * draw(gaussian)
    if nonzero and f.is_zero():
        f = f + 1
    return f


@st.composite
def invertible_matrices(draw, p=2):
    m = RatMatrix([[draw(rational_functions()) for _ in range(p)] for _ in range(p)])
    assume(not m.det().is_zero())
    return m
