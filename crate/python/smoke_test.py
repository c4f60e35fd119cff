"""Smoke test for the wtheta_py bindings.

Install first:  pip install -e crates/wtheta-py --no-build-isolation
Then run:       python3 python/smoke_test.py
"""

import json

import wtheta_py


def main():
    names = wtheta_py.model_names()
    assert names == ["WG2", "WF4", "W24", "W26", "W28"], names

    model = wtheta_py.Model("WG2")
    assert model.l == 5 and model.k == 4
    assert model.c == "-8/5" and model.c_tilde == "16/5" and model.delta == "1/5"
    assert model.h_values == ["0", "-1/5", "1/5", "2/5"]

    doc = json.loads(model.characters(terms=12))
    assert doc["model"] == "WG2" and doc["delta"] == "1/5"
    chars = {ch["h"]: ch["coefficients"] for ch in doc["characters"]}
    assert len(chars) == 4
    # vacuum character of the Lee-Yang x (G2 level 1) product
    assert chars["0"][:6] == ["1", "14", "43", "155", "407", "1037"]

    # theta-side and Lie-side characters agree up to one positive constant
    lie = json.loads(model.lie_characters(terms=12))
    lie_chars = {ch["h"]: ch["coefficients"] for ch in lie["characters"]}
    for h, coeffs in chars.items():
        scale = int(coeffs[0]) / int(lie_chars[h][0])
        assert all(
            int(a) == scale * int(b) for a, b in zip(coeffs, lie_chars[h])
        ), f"h = {h}"

    # W28 has no practical Lie-side construction
    try:
        wtheta_py.Model("W28").lie_characters(terms=2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for W28")

    checks = wtheta_py.verify("algebraic")
    assert checks and all(passed for _, passed, _ in checks), checks

    print("smoke test passed:", len(checks), "algebraic checks,", len(chars), "WG2 characters")


if __name__ == "__main__":
    main()
