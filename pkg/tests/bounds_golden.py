"""Hand-substituted values for the bound calculators; every expected value is a literal."""

from fractions import Fraction as F

# (calculator, arguments, expected)
GOLDEN = [
    ("theorem1", dict(p=2, n=2, r=(1, 0)), 3),
    ("theorem1", dict(p=1, n=3, r=(4, 2, 1)), 4),
    ("theorem1", dict(p=3, n=3, r=(0, 0, 0)), 4),
    ("theorem1", dict(p=3, n=2, r=(2, 1)), 10),
    ("theorem1", dict(p=4, n=1, r=(3,)), 12),
    ("theorem1", dict(p=2, n=4, r=(0, 1, 0, 2)), 6),
    ("remark2", dict(p=2, n=2, r=(1, 0)), 2),
    ("remark2", dict(p=3, n=1, r=(2,)), 4),
    ("remark2", dict(p=4, n=3, r=(0, 1, 1)), 9),
    ("remark2", dict(p=1, n=2, r=(5, 0)), 5),
    ("remark2", dict(p=2, n=3, r=(2, 0, 0)), 5),
    ("prop1", dict(k=(3, 0), n=2, R=1, M=1), False),
    ("prop1", dict(k=(0, 0), n=5, R=3, M=2), True),
    ("prop1", dict(k=(2, 0), n=2, R=1, M=1), True),
    ("prop1", dict(k=(5, 1, 0), n=2, R=1, M=2), True),
    ("prop1", dict(k=(6, 0), n=2, R=1, M=2), False),
    ("formsO", dict(r1=1, k=(2, 0)), 3),
    ("formsO", dict(r1=4, k=(1, 1, 1)), 4),
    ("formsO", dict(r1=0, k=(5, 1, 0)), 5),
    ("formsO", dict(r1=2, k=(3, -2)), 7),
    ("theorem2", dict(p=2, n=2, K=(F(3, 2), 0)), 6),
    ("theorem2", dict(p=2, n=3, K=(0, 0, 0)), 5),
    ("theorem2", dict(p=1, n=2, K=(F(7, 3), 1)), 1),
    ("theorem2", dict(p=3, n=2, K=(F(1, 2), F(4, 3))), 19),
    ("theorem2", dict(p=4, n=1, K=(2,)), 25),
    ("corollary1", dict(r0=1, r=4, p=3), True),
    ("corollary1", dict(r0=2, r=3, p=2), False),
    ("corollary1", dict(r0=0, r=0, p=5), True),
    ("corollary1", dict(r0=1, r=3, p=3), True),
    ("corollary1", dict(r0=2, r=5, p=3), False),
]


def evaluate(name, args):
    from singular_forge import bounds
    from singular_forge.gauge import SplittingType

    if name == "theorem1":
        return bounds.theorem1_bound(bounds.BoundInputs(args["p"], args["n"], args["r"]))
    if name == "remark2":
        return bounds.remark2_bound(bounds.BoundInputs(args["p"], args["n"], args["r"]))
    if name == "theorem2":
        return bounds.theorem2_bound(bounds.BoundInputs(args["p"], args["n"], K=args["K"]))
    if name == "prop1":
        return bounds.prop1_check(SplittingType(args["k"]), args["n"], args["R"], args["M"])
    if name == "formsO":
        return bounds.formsO_rank_bound(args["r1"], SplittingType(args["k"]))
    if name == "corollary1":
        return bounds.corollary1_predicate(args["r0"], args["r"], args["p"])
    raise KeyError(name)
