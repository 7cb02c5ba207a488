"""Smoke test for the kunion extension module.

Build and install first:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/kunion-*.whl

Then run `python python/smoke_test.py` or `pytest python/smoke_test.py`.
"""

import json
import math

import kunion


def test_constants():
    golden = (math.sqrt(5) - 1) / 2
    assert abs(kunion.phi(2) - golden) < 1e-15
    row = kunion.ConstantsRow(3)
    assert abs(row.psi - 0.3176) < 1e-4
    assert abs(row.z - row.psi) < 1e-15
    assert abs(row.mu - 1 / row.alpha) < 1e-12
    d = row.to_dict()
    assert d["kind"] == "constants_row" and isinstance(d["phi"], str)
    rows = kunion.table1([5, 16])
    assert abs(rows[1].z - 0.1204) < 1e-4


def test_frequency_bound():
    b = kunion.frequency_bound(3, "0", "1024")
    assert b["delta"].strip("0.") == ""
    assert abs(float(b["guaranteed_fraction"]) - 0.3176) < 1e-4
    try:
        kunion.frequency_bound(3, "0.5", "1024")
    except ValueError:
        pass
    else:
        raise AssertionError("eps = 1/2 must be rejected")


def test_phi_element():
    p = kunion.PhiElement.phi(3)
    one = kunion.PhiElement.rational(3, "1")
    assert (p ** 3 + p - one).sign() == 0
    a = kunion.PhiElement.alpha(3)
    assert a == one / p - one
    assert abs(float(a) - 0.46557123) < 1e-8


def test_polynomials():
    p = kunion.build_p(3)
    assert p.degree() == 8
    assert kunion.check_table2(3).passed
    assert kunion.root_count(2) == (2, 2)
    assert p.eval("0").sign() == 1
    assert kunion.discriminant_sign_pattern(4)[13] == 0


def test_analysis():
    assert abs(kunion.h(0.5) - math.log(2)) < 1e-15
    assert kunion.f_k(3, 0.3) > 0
    phi = kunion.phi(2)
    assert abs(kunion.m_k([phi, phi]) - 1 / (2 * phi)) < 1e-12
    rep = kunion.verify_lemma_cl(2000, 1)
    assert rep.passed, rep.text()
    assert rep.to_dict()["claim_id"] == rep.claim_id
    point, value = kunion.minimize_m_k(2, 1e-6)
    assert abs(point[0] - phi) < 1e-6 and abs(value - 1 / (2 * phi)) < 1e-9


def test_simulation():
    spec = kunion.FamilySpec(12, 2, allow_overlap=True)
    assert spec.overlap
    sim = spec.simulate(5000, 7)
    assert sim.closure_fraction[0] == 1.0
    assert sim.check().passed
    again = spec.simulate(5000, 7)
    assert sim.to_json() == again.to_json()


def test_cli():
    code, out, _ = kunion.run_cli(["bound", "--k", "3", "--eps", "0", "--family-size", "1024", "--format", "json", "--no-timestamp"])
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert records[0]["kind"] == "run_config"
    assert records[1]["kind"] == "frequency_bound"
    code, _, err = kunion.run_cli(["table", "--bogus"])
    assert code == 3 and "bogus" in err


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
