import json
import random

import pytest

from iwcontract import jsonio
from iwcontract.algebra import StructureConstants
from iwcontract.contraction import ContractionSpec, Monomial, Signature
from iwcontract.multiplicative import MultiplicativeCertificate, MultiplicativeSystem, RadicalProduct
from iwcontract.pipeline import InconsistentLimitsError, integerize_diagonal
from iwcontract.signature import MixedLinearSystem, solve_integer_signature, triple_row

from randgen import random_monomial_family, random_signed_permutation


def test_algebra_round_trip(corpus):
    for entry in corpus:
        doc = jsonio.algebra_to_doc(entry.algebra)
        text = jsonio.dumps(doc)
        again = jsonio.algebra_from_doc(json.loads(text))
        assert again == entry.algebra
        assert jsonio.dumps(jsonio.algebra_to_doc(again)) == text


def test_rationals_are_strings():
    doc = jsonio.algebra_to_doc(StructureConstants(3, {(1, 2, 3): "-3/4"}))
    assert doc["brackets"][0]["c"] == "-3/4"


@pytest.mark.parametrize("doc,msg", [
    ({"dim": 3, "brackets": [{"i": 2, "j": 1, "k": 3, "c": "1"}]}, "i < j"),
    ({"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 1, "j": 2, "k": 3, "c": "2"}]},
     "duplicate"),
    ({"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": 0.5}]}, "strings"),
    ({"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 4, "c": "1"}]}, "index"),
    ({"brackets": []}, "dim"),
])
def test_algebra_rejects(doc, msg):
    with pytest.raises(jsonio.DocumentError, match=msg):
        jsonio.algebra_from_doc(doc)


def test_malformed_json_position():
    with pytest.raises(jsonio.DocumentError, match="line 1 column"):
        jsonio.loads('{"dim": 3,')


def test_spec_round_trip():
    rng = random.Random(1)
    specs = [
        ContractionSpec(None, Signature(["1", "1/2", "-2"]), None),
        ContractionSpec(random_signed_permutation(rng, 3),
                        (Monomial(2, 1), Monomial("-1/3", 0), Monomial(1, "5/2")),
                        random_signed_permutation(rng, 3)),
        ContractionSpec(None, {(1, 2, 3): "2", (1, 3, 2): "0"}, None),
    ]
    for spec in specs:
        text = jsonio.dumps(jsonio.spec_to_doc(spec))
        again = jsonio.spec_from_doc(json.loads(text), 3)
        assert jsonio.dumps(jsonio.spec_to_doc(again)) == text
        assert again.A == spec.A and again.P == spec.P


def test_spec_defaults_to_identity():
    spec = jsonio.spec_from_doc({"family": {"kind": "signature", "exponents": ["1", "1", "2"]}}, 3)
    assert spec.A is None and spec.P is None


def test_gamma_format():
    r = RadicalProduct(1, [(2, "-1/2")])
    assert jsonio.radical_to_doc(r) == {"sign": 1, "factors": [{"base": "2", "exp": "-1/2"}]}
    assert jsonio.radical_from_doc({"sign": -1, "factors": [{"base": "4", "exp": "1/4"}]}) == \
        RadicalProduct(-1, [(2, "1/2")])


def test_result_round_trip(corpus):
    rng = random.Random(2)
    for entry in corpus:
        fam = random_monomial_family(rng, entry.algebra)
        res = integerize_diagonal(entry.algebra, None, fam)
        text = jsonio.dumps(jsonio.result_to_doc(res))
        again = jsonio.result_from_doc(json.loads(text))
        assert jsonio.dumps(jsonio.result_to_doc(again)) == text
        assert again.gamma == res.gamma and again.alpha == res.alpha


def test_linear_certificate_round_trip():
    sys = MixedLinearSystem(2, (), (triple_row(2, (1, 2, 2)), (-1, 0)), {2: ">0"},
                            ineq_triples=((1, 2, 2), (0, 0, 0)))
    cert = solve_integer_signature(sys)
    doc = jsonio.linear_certificate_to_doc(cert, sys)
    assert all(item["coef"] > 0 for item in doc["inequalities"])
    again = jsonio.linear_certificate_from_doc(json.loads(jsonio.dumps(doc)), sys)
    assert again == cert and again.check(sys)
    assert jsonio.linear_certificate_to_doc(again, sys) == doc


def test_multiplicative_certificate_round_trip(so3):
    with pytest.raises(InconsistentLimitsError) as info:
        integerize_diagonal(so3, None, {(1, 2, 3): 1, (1, 3, 2): -1, (2, 3, 1): 0})
    err = info.value
    doc = jsonio.certificate_to_doc(err.certificate, err.system)
    assert doc["kind"] == "negative_square"
    again = jsonio.multiplicative_certificate_from_doc(json.loads(jsonio.dumps(doc)))
    assert again == err.certificate and again.check(err.system)
