import numpy as np
import pytest

from holoprint import (
    Affine,
    AutomorphismWord,
    ComplexPolynomial,
    ParseError,
    Shear,
    SourceSpan,
    evaluate,
    evaluate_many,
    parse_automorphism,
    parse_point,
    polynomial_text,
    serialize,
)
from holoprint.wordgen import make_rng, random_word


class TestParsing:
    def test_identity(self):
        w = parse_automorphism("id", 2)
        assert w.dimension == 2 and w.word == ()
        assert np.array_equal(evaluate(w, [1.0, 2.0]), [1.0, 2.0])

    def test_single_shear(self):
        w = parse_automorphism("shear(2, z1^2)", 2)
        (g,) = w.word
        assert isinstance(g, Shear)
        assert g.k == 2 and g.p.terms == {(2, 0): 1.0}

    def test_single_affine(self):
        w = parse_automorphism("affine(2,0; 0,1; 1,0)", 2)
        (g,) = w.word
        assert isinstance(g, Affine)
        assert np.array_equal(g.matrix, [[2.0, 0.0], [0.0, 1.0]])
        assert np.array_equal(g.offset, [1.0, 0.0])

    def test_dot_applies_right_atom_first(self):
        w = parse_automorphism("affine(2,0;0,1 ; 1,0) . shear(2, z1^2)", 2)
        assert isinstance(w.word[0], Shear)  # storage holds application order
        assert isinstance(w.word[1], Affine)
        assert np.allclose(evaluate(w, [1.0, 0.0]), [3.0, 1.0], atol=1e-14)

    def test_whitespace_insensitive(self):
        a = parse_automorphism("shear(2,z1^2+3*z1)", 2)
        b = parse_automorphism("  shear( 2 ,  z1^2 + 3 * z1 )  ", 2)
        assert a.word[0].p.terms == b.word[0].p.terms

    def test_coefficient_literal_forms(self):
        w = parse_automorphism(
            "shear(2, 2i*z1 + i*z1^2 + (1+2i)*z1^3 + 1.5e-3i)", 2
        )
        assert w.word[0].p.terms == {
            (1, 0): 2j,
            (2, 0): 1j,
            (3, 0): 1 + 2j,
            (0, 0): 1.5e-3j,
        }

    def test_expression_arithmetic(self):
        w = parse_automorphism("shear(2, (z1 + 1)^2 - z1^2 - 1)", 2)
        assert w.word[0].p.terms == {(1, 0): 2.0}
        w = parse_automorphism("shear(2, -z1 - -z1^2)", 2)
        assert w.word[0].p.terms == {(1, 0): -1.0, (2, 0): 1.0}

    def test_parse_point_values(self):
        assert np.array_equal(parse_point("1,0", 2), [1.0, 0.0])
        assert np.array_equal(parse_point("(1+2i), 3i", 2), [1 + 2j, 3j])

    def test_rejects_nonpositive_dimension(self):
        with pytest.raises(ValueError):
            parse_automorphism("id", 0)


class TestParseErrors:
    CASES = [
        # (text, n, kind, lexeme the span must cover or None)
        ("", 2, "syntax", None),
        ("id .", 2, "syntax", None),
        ("id extra", 2, "syntax", "extra"),
        ("rotate(1)", 2, "syntax", "rotate"),
        ("shear(2, z1^2", 2, "syntax", None),
        ("shear(2, z1^(2))", 2, "syntax", "("),
        ("shear(2, z1^2.5)", 2, "syntax", "2.5"),
        ("shear(2, 2 z1)", 2, "syntax", "z1"),
        ("shear(1.5, z1)", 2, "syntax", "1.5"),
        ("shear(2, z1 +)", 2, "syntax", ")"),
        ("affine(z1,0; 0,1; 0,0)", 2, "syntax", None),
        ("shear(2, z3^2)", 2, "unknown-variable", "z3"),
        ("shear(2, w + z1)", 2, "unknown-variable", "w"),
        ("shear(5, z1)", 2, "unknown-variable", "5"),
        ("shear(0, z1)", 2, "unknown-variable", "0"),
        ("shear(2, shear(1, z1))", 2, "unknown-variable", "shear"),
        ("shear(2, z2)", 2, "self-referential-shear", "z2"),
        ("shear(2, z1*z2)", 2, "self-referential-shear", "z2"),
        ("shear(2, z1 + z2 - z2)", 2, "self-referential-shear", "z2"),
        ("affine(1,1; 1,1; 0,0)", 2, "singular-matrix", None),
        ("affine(0,0; 0,0; 1,1)", 2, "singular-matrix", None),
        ("affine(1,0; 0,1)", 2, "dimension-mismatch", None),
        ("affine(1,0,0; 0,1; 0,0)", 2, "dimension-mismatch", None),
        ("affine(3; 2)", 2, "dimension-mismatch", None),
    ]

    @pytest.mark.parametrize("text,n,kind,lexeme", CASES)
    def test_kind_and_span(self, text, n, kind, lexeme):
        with pytest.raises(ParseError) as info:
            parse_automorphism(text, n)
        err = info.value
        assert err.kind == kind
        assert 0 <= err.span.start <= err.span.end <= max(len(text), 1)
        if lexeme is not None:
            assert text[err.span.start : err.span.end] == lexeme

    def test_span_excludes_valid_prefix(self):
        text = "affine(2,0; 0,1; 1,0) . shear(2, qq)"
        with pytest.raises(ParseError) as info:
            parse_automorphism(text, 2)
        assert info.value.kind == "unknown-variable"
        assert info.value.span.start >= text.index("qq")

    def test_str_mentions_kind_and_span(self):
        with pytest.raises(ParseError) as info:
            parse_automorphism("shear(2, z2)", 2)
        s = str(info.value)
        assert "self-referential-shear" in s and "9..11" in s

    def test_point_errors(self):
        with pytest.raises(ParseError) as info:
            parse_point("1", 2)
        assert info.value.kind == "dimension-mismatch"
        with pytest.raises(ParseError) as info:
            parse_point("1,,2", 2)
        assert info.value.kind == "syntax"
        with pytest.raises(ParseError) as info:
            parse_point("1,2,3", 2)
        assert info.value.kind == "dimension-mismatch"

    def test_source_span_validation(self):
        with pytest.raises(ValueError):
            SourceSpan(3, 2)
        with pytest.raises(ValueError):
            SourceSpan(-1, 2)
        with pytest.raises(ValueError):
            ParseError("nonsense-kind", SourceSpan(0, 1), "x")


class TestSerialization:
    def test_goldens(self):
        assert serialize(AutomorphismWord.identity(2)) == "id"
        w = parse_automorphism("shear(2,z1^2)", 2)
        assert serialize(w) == "shear(2, z1^2)"
        w = parse_automorphism("affine(2, 0; 0, 1; 1, 0)", 2)
        assert serialize(w) == "affine(2,0; 0,1; 1,0)"
        w = parse_automorphism("affine(2,0;0,1;1,0).shear(2,z1^2)", 2)
        assert serialize(w) == "affine(2,0; 0,1; 1,0) . shear(2, z1^2)"

    def test_polynomial_text_graded_lex_descending(self):
        P = ComplexPolynomial
        assert polynomial_text(P(2, {(2, 0): 1, (1, 1): 1, (0, 2): 1})) == (
            "z1^2 + z1*z2 + z2^2"
        )
        assert polynomial_text(P(2, {(0, 3): 1, (1, 1): 1, (1, 0): 1})) == (
            "z2^3 + z1*z2 + z1"
        )

    def test_polynomial_text_coefficients(self):
        P = ComplexPolynomial
        assert polynomial_text(P(2, {(2, 0): 1, (1, 0): -1, (0, 0): 2.5})) == (
            "z1^2 - z1 + 2.5"
        )
        assert polynomial_text(P(2, {(1, 0): 2j, (0, 0): -1j})) == "2i*z1 - i"
        assert polynomial_text(P(2, {(1, 0): 1 + 2j})) == "(1+2i)*z1"
        assert polynomial_text(P(2, {})) == "0"
        assert polynomial_text(P(2, {(1, 0): -1})) == "-z1"

    def test_round_trip_is_exact_on_random_words(self):
        rng = make_rng(22)
        for _ in range(30):
            w = random_word(rng, 2, max_length=4, image_bound=1e3)
            back = parse_automorphism(serialize(w), 2)
            assert len(back.word) == len(w.word)
            for g, h in zip(w.word, back.word):
                if isinstance(g, Shear):
                    assert isinstance(h, Shear)
                    assert g.k == h.k and g.p.terms == h.p.terms
                else:
                    assert isinstance(h, Affine)
                    assert np.array_equal(g.matrix, h.matrix)
                    assert np.array_equal(g.offset, h.offset)

    def test_round_trip_preserves_evaluation(self):
        rng = make_rng(23)
        for _ in range(10):
            w = random_word(rng, 3, max_length=4, image_bound=1e3)
            back = parse_automorphism(serialize(w), 3)
            Z = rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))
            gap = np.abs(evaluate_many(back, Z) - evaluate_many(w, Z)).max()
            assert gap < 1e-12

    def test_serialize_is_a_fixed_point(self):
        rng = make_rng(24)
        for _ in range(10):
            w = random_word(rng, 2, max_length=4, image_bound=1e3)
            s = serialize(w)
            assert serialize(parse_automorphism(s, 2)) == s
