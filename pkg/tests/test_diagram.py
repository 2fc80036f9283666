import pytest

from noricat.diagram import (Arrow, Coproduct, Diagram, Representation, SubdiagramChain,
                             base_change_Q, diagram_from_arrows, named_stages,
                             representation_from_json, restrict, stage_from_json, validate)
from noricat.linalg import IntMat, RatMat

from helpers import random_rep, seeded


def two_objects():
    D = diagram_from_arrows(["p", "q"], [("a", "p", "q")])
    return Representation(D, "Z", {"p": 1, "q": 1}, {"a": IntMat([[2]], 1, 1)})


def test_diagram_validation():
    with pytest.raises(ValueError, match="undeclared object"):
        Diagram(("p",), (Arrow("a", "p", "q"),))
    with pytest.raises(ValueError, match="duplicate"):
        Diagram(("p", "p"))
    with pytest.raises(ValueError, match="wrong endpoints"):
        Diagram(("p", "q", "s"), (Arrow("i", "p", "s"), Arrow("j", "s", "q")),
                (Coproduct("p", "q", "s", "i", "j"),))


def test_restrict_examples():
    T = two_objects()
    assert restrict(T, T.diagram) == T
    Tp = restrict(T, T.diagram.sub(["p"]))
    assert Tp.values == {"p": 1} and Tp.matrices == {}
    assert restrict(T, T.diagram.sub(["p", "q"], ["a"])).matrix("a") == IntMat([[2]], 1, 1)
    with pytest.raises(ValueError):
        restrict(T, Diagram(("z",)))


def test_base_change():
    T = two_objects()
    TQ = base_change_Q(T)
    assert TQ.ring == "Q" and TQ.matrix("a") == RatMat([[2]], 1, 1)
    assert base_change_Q(Representation(Diagram(), "Z", {}, {})).values == {}
    with pytest.raises(ValueError):
        base_change_Q(TQ)


def test_validate_reports():
    T = two_objects()
    assert validate(T) == []
    bad = Representation(T.diagram, "Z", {"p": 1, "q": 2}, {"a": IntMat([[2]], 1, 1)})
    problems = validate(bad)
    assert len(problems) == 1 and "arrow a" in problems[0]
    D = diagram_from_arrows(["p"], [("a", "p", "p"), ("b", "p", "p")])
    mixed = Representation(D, "Z", {"p": 1}, {"a": RatMat([[1]], 1, 1), "b": RatMat([[2]], 1, 1)})
    assert len(validate(mixed)) == 2


def test_restrict_functorial_and_base_change_commutes():
    rng = seeded(7)
    for _ in range(30):
        T = random_rep(rng)
        D = T.diagram
        objs = [o for o in D.objects if rng.random() < 0.7]
        E2 = D.sub(objs)
        E1 = E2.sub([o for o in objs if rng.random() < 0.7])
        assert restrict(restrict(T, E2), E1) == restrict(T, E1)
        assert base_change_Q(restrict(T, E2)) == restrict(base_change_Q(T), E2)


def test_chain_validation():
    T = two_objects()
    D = T.diagram
    chain = SubdiagramChain((D.sub(["p"]), D.sub(["p", "q"], []), D))
    chain.check_within(D)
    with pytest.raises(ValueError, match="not increasing"):
        SubdiagramChain((D, D.sub(["p"])))


def test_json_roundtrip_and_stages():
    T = two_objects()
    obj = T.to_json()
    obj["stages"] = {"left": ["p"], "bare": {"objects": ["p", "q"], "arrows": []}}
    T2 = representation_from_json(obj)
    assert T2 == T
    stages = named_stages(T2.diagram, obj)
    assert set(stages) == {"full", "left", "bare"}
    assert stages["bare"].arrows == ()
    assert stage_from_json(T2.diagram, ["q"]).objects == ("q",)
