"""Quick end-to-end check of the sphereq Python module."""

import sphereq

gl2 = {
    "group": {"family": "gl2p", "p": 101},
    "constants": [
        {"rows": [[1, 2], [3, 4]]},
        {"rows": [[5, 6], [7, 9]]},
        {"rows": [[2, 0], [1, 3]]},
        {"rows": [[46, 2], [60, 60]]},
    ],
}

report = sphereq.solve(gl2, seed=7)
assert report["solvable"] and report["verified"], report
assert sphereq.verify(gl2, report)
assert report == sphereq.solve(gl2, seed=7)

eq = sphereq.Equation(gl2)
assert eq.num_constants == 4 and eq.family == "gl2p"
assert eq.decide() == eq.decide(force_oracle=False)
sol = eq.solve(seed=1)
assert sol is not None and eq.verify(sol)

part = sphereq.reduce("partition", {"a": [3, 1, 2]})
assert sphereq.decide(part) == {"method": "dihedral-criteria", "solvable": True}
assert not sphereq.decide(sphereq.reduce("partition", {"a": [1, 2]}))["solvable"]

xc = sphereq.reduce("xcover", {"k": 2, "subsets": [[1], [2]]}, m=3)
assert sphereq.decide(xc)["method"] == "semidirect-signvector"

assert sphereq.saturation_length({"family": "symmetric", "n": 3}) is None
assert sphereq.saturation_length({"family": "alternating", "n": 5}) is not None

a = sphereq.Matrix(7, [[1, 1], [0, 1]])
b = sphereq.Matrix(7, [[2, 3], [1, 4]])
assert a.classify()["type"] == "type3"
assert (a * a.inverse()) == sphereq.Matrix(7, [[1, 0], [0, 1]])
assert a.conj(b).is_conjugate_to(a)
assert a.conj(b).trace() == a.trace()

try:
    sphereq.decide('{"group": {"family": "gl2p", "p": 6}, "constants": []}')
except sphereq.SphereqError:
    pass
else:
    raise AssertionError("expected SphereqError")

print("smoke test passed")
