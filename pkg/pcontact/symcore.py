"""
Symbolic Core - exact scalars, Laurent polynomials and chart-local forms

Every chart expression of the engine lives here: Gaussian rationals built
on fractions.Fraction, multivariate Laurent polynomials keyed by dense
exponent tuples, and holomorphic (p,0)-forms keyed by strictly increasing
multi-indices. Arithmetic is exact; floats only appear in eval_at outputs.

Key Operations:
- normalize: canonical Laurent polynomial (merged, no zero terms)
- wedge / wedge_power: exterior product, sign from merge parity
- del_op: holomorphic exterior derivative, new dz prepended
- contract: interior product, left anti-derivation convention
- eval_at / eval_exact: floating and exact evaluation with pole detection
- render / parse_laurent / parse_form_terms: canonical text and its parser
"""

import re
from bisect import bisect_right
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pcontact.errors import PoleError, RejectedInput

Exponent = Tuple[int, ...]
MultiIndex = Tuple[int, ...]
Rational = Union[int, Fraction]


# ============================================================================
# Scalars
# ============================================================================

class Scalar:
    """Exact Gaussian rational re + im*i"""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value) -> "Scalar":
        """Accept Scalar, int, Fraction or canonical text"""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise RejectedInput(f"cannot use {value!r} as an exact scalar")

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by the zero scalar")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("the zero scalar has no inverse")
        norm = self.abs2()
        return Scalar(self.re / norm, -self.im / norm)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def render(self) -> str:
        """Canonical text: '3', '-1/2', '(1/2-3i)'"""
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"


ZERO = Scalar(0)
ONE = Scalar(1)


def _as_scalar(value) -> Optional[Scalar]:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return None


# ============================================================================
# Laurent polynomials
# ============================================================================

class LaurentPoly:
    """
    Multivariate Laurent polynomial over Scalar.

    Terms map dense exponent tuples (length nvars, negative entries allowed)
    to nonzero Scalars. Instances are canonical and never mutated.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, object]] = None):
        clean: Dict[Exponent, Scalar] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise RejectedInput(f"exponent {exp} does not have length {nvars}")
            value = Scalar.coerce(coeff)
            if value:
                clean[exp] = value
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _wrap(cls, nvars: int, terms: Dict[Exponent, Scalar]) -> "LaurentPoly":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.terms = terms
        return poly

    # ---------------------------------------------------------------- builders

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value=1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "LaurentPoly":
        if not 0 <= index < nvars:
            raise RejectedInput(f"variable {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = power
        return cls._wrap(nvars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def from_terms(cls, nvars: int, pairs: Iterable[Tuple[Sequence[int], object]]) -> "LaurentPoly":
        """Build from a raw term list; like terms are merged"""
        merged: Dict[Exponent, Scalar] = {}
        for exp, coeff in pairs:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise RejectedInput(f"exponent {exp} does not have length {nvars}")
            merged[exp] = merged.get(exp, ZERO) + Scalar.coerce(coeff)
        return cls(nvars, merged)

    # -------------------------------------------------------------- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self.terms)

    def constant_value(self) -> Scalar:
        """Coefficient of the exponent-zero term"""
        return self.terms.get((0,) * self.nvars, ZERO)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exp in self.terms for e in exp)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(exp) == degree for exp in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -------------------------------------------------------------- arithmetic

    def _check(self, other: "LaurentPoly"):
        if other.nvars != self.nvars:
            raise RejectedInput(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        value = _as_scalar(other)
        if value is None:
            return None
        return LaurentPoly.constant(self.nvars, value)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            total = terms.get(exp, ZERO) + coeff
            if total:
                terms[exp] = total
            else:
                terms.pop(exp, None)
        return LaurentPoly._wrap(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap(self.nvars, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            terms: Dict[Exponent, Scalar] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exp = tuple(a + b for a, b in zip(e1, e2))
                    total = terms.get(exp, ZERO) + c1 * c2
                    if total:
                        terms[exp] = total
                    else:
                        terms.pop(exp, None)
            return LaurentPoly._wrap(self.nvars, terms)
        value = _as_scalar(other)
        if value is None:
            return NotImplemented
        if not value:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly._wrap(self.nvars, {exp: c * value for exp, c in self.terms.items()})

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; other polynomials are not units"""
        if not self.is_monomial():
            raise RejectedInput(f"only monomials are invertible, got {self.render()}")
        (exp, coeff), = self.terms.items()
        return LaurentPoly._wrap(self.nvars, {tuple(-e for e in exp): coeff.inverse()})

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = LaurentPoly.one(self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def diff(self, index: int) -> "LaurentPoly":
        """Partial derivative in variable `index`"""
        terms: Dict[Exponent, Scalar] = {}
        for exp, coeff in self.terms.items():
            e = exp[index]
            if e:
                new = list(exp)
                new[index] = e - 1
                terms[tuple(new)] = coeff * e
        return LaurentPoly._wrap(self.nvars, terms)

    def substitute(self, images: Sequence["LaurentPoly"], nvars: Optional[int] = None) -> "LaurentPoly":
        """
        Replace variable i by images[i].

        Negative exponents require the image to be a monomial.
        """
        if len(images) != self.nvars:
            raise RejectedInput(f"need {self.nvars} images, got {len(images)}")
        target = nvars if nvars is not None else (images[0].nvars if images else 0)
        powers: Dict[Tuple[int, int], LaurentPoly] = {}
        result = LaurentPoly.zero(target)
        for exp, coeff in self.terms.items():
            term = LaurentPoly.constant(target, coeff)
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def embed(self, nvars: int, offset: int) -> "LaurentPoly":
        """View as a polynomial in a larger variable block starting at `offset`"""
        pad = nvars - offset - self.nvars
        if offset < 0 or pad < 0:
            raise RejectedInput(f"cannot embed {self.nvars} variables at offset {offset} into {nvars}")
        head, tail = (0,) * offset, (0,) * pad
        return LaurentPoly._wrap(nvars, {head + exp + tail: c for exp, c in self.terms.items()})

    # -------------------------------------------------------------- evaluation

    def eval_at(self, point: Sequence[complex]) -> complex:
        if len(point) != self.nvars:
            raise RejectedInput(f"point has {len(point)} coordinates, expected {self.nvars}")
        coords = [complex(z) for z in point]
        total = 0j
        for exp, coeff in self.terms.items():
            value = complex(coeff)
            for i, e in enumerate(exp):
                if e:
                    if e < 0 and coords[i] == 0:
                        raise PoleError(i)
                    value *= coords[i] ** e
            total += value
        return total

    def eval_exact(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.nvars:
            raise RejectedInput(f"point has {len(point)} coordinates, expected {self.nvars}")
        coords = [Scalar.coerce(z) for z in point]
        total = ZERO
        for exp, coeff in self.terms.items():
            value = coeff
            for i, e in enumerate(exp):
                if e:
                    if e < 0 and not coords[i]:
                        raise PoleError(i)
                    value = value * coords[i] ** e
            total = total + value
        return total

    # ------------------------------------------------------------------ output

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        """Canonical text, terms in lexicographic exponent order"""
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = [_render_term(exp, self.terms[exp], names) for exp in sorted(self.terms)]
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            value = _as_scalar(other)
            if value is None:
                return NotImplemented
            other = LaurentPoly.constant(self.nvars, value)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()})"


def default_names(nvars: int) -> List[str]:
    return [f"z{i}" for i in range(nvars)]


def _render_term(exp: Exponent, coeff: Scalar, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, exp):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    monomial = "*".join(factors)
    if not monomial:
        return coeff.render()
    if coeff == ONE:
        return monomial
    if coeff == -ONE:
        return f"-{monomial}"
    return f"{coeff.render()}*{monomial}"


def normalize(f: LaurentPoly) -> LaurentPoly:
    """Canonical form: merged terms, zero coefficients dropped, fractions reduced"""
    return LaurentPoly(f.nvars, f.terms)


# ============================================================================
# Multi-index signs
# ============================================================================

def sort_with_sign(indices: Sequence[int]) -> Tuple[int, MultiIndex]:
    """Sort indices, returning the permutation sign (0 if an index repeats)"""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, ()
    inversions = sum(1 for a in range(len(items)) for b in range(a + 1, len(items)) if items[a] > items[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(items))


def merge_sign(left: MultiIndex, right: MultiIndex) -> Tuple[int, MultiIndex]:
    """Sign and sorted index of dz_left ^ dz_right for increasing inputs"""
    if set(left).intersection(right):
        return 0, ()
    crossings = sum(len(left) - bisect_right(left, j) for j in right)
    return (-1 if crossings % 2 else 1), tuple(sorted(left + right))


def check_multi_index(indices: Sequence[int], degree: int, nvars: int) -> MultiIndex:
    index = tuple(int(i) for i in indices)
    if len(index) != degree:
        raise RejectedInput(f"multi-index {index} does not have length {degree}")
    if any(a >= b for a, b in zip(index, index[1:])):
        raise RejectedInput(f"multi-index {index} is not strictly increasing")
    if index and (index[0] < 0 or index[-1] >= nvars):
        raise RejectedInput(f"multi-index {index} out of range for {nvars} variables")
    return index


# ============================================================================
# Forms
# ============================================================================

class Form:
    """
    A holomorphic (p,0)-form on one chart.

    coeffs maps strictly increasing multi-indices of length `degree` to
    nonzero Laurent polynomials in `nvars` variables.
    """

    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, degree: int, coeffs: Optional[Mapping[Sequence[int], LaurentPoly]] = None):
        if not 0 <= degree <= nvars:
            raise RejectedInput(f"degree {degree} impossible with {nvars} variables")
        clean: Dict[MultiIndex, LaurentPoly] = {}
        for index, poly in (coeffs or {}).items():
            index = check_multi_index(index, degree, nvars)
            if not isinstance(poly, LaurentPoly):
                poly = LaurentPoly.constant(nvars, poly)
            if poly.nvars != nvars:
                raise RejectedInput(f"coefficient of {index} has {poly.nvars} variables, expected {nvars}")
            if not poly.is_zero():
                clean[index] = poly
        self.nvars = nvars
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def _wrap(cls, nvars: int, degree: int, coeffs: Dict[MultiIndex, LaurentPoly]) -> "Form":
        form = cls.__new__(cls)
        form.nvars = nvars
        form.degree = degree
        form.coeffs = coeffs
        return form

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "Form":
        return cls(nvars, degree)

    @classmethod
    def function(cls, poly: LaurentPoly) -> "Form":
        return cls(poly.nvars, 0, {(): poly})

    @classmethod
    def dz(cls, nvars: int, *indices: int) -> "Form":
        """dz_{i1} ^ ... ^ dz_{ik}, indices in any order"""
        sign, index = sort_with_sign(indices)
        if not sign:
            return cls(nvars, len(indices))
        return cls(nvars, len(index), {index: LaurentPoly.constant(nvars, sign)})

    @classmethod
    def from_terms(cls, nvars: int, degree: int, pairs: Iterable[Tuple[Sequence[int], LaurentPoly]]) -> "Form":
        """Build from (indices, coefficient) pairs with unsorted indices allowed"""
        acc: Dict[MultiIndex, LaurentPoly] = {}
        for indices, poly in pairs:
            if not isinstance(poly, LaurentPoly):
                poly = LaurentPoly.constant(nvars, poly)
            sign, index = sort_with_sign(indices)
            if sign:
                _accumulate(acc, index, poly * sign)
        return cls(nvars, degree, acc)

    # -------------------------------------------------------------- predicates

    def is_zero(self) -> bool:
        return not self.coeffs

    def has_negative_exponents(self) -> bool:
        return any(not poly.is_polynomial() for poly in self.coeffs.values())

    def has_constant_coefficients(self) -> bool:
        return all(poly.is_constant() for poly in self.coeffs.values())

    def top_coefficient(self) -> LaurentPoly:
        """Coefficient of dz_0^...^dz_{n-1}; requires degree == nvars"""
        if self.degree != self.nvars:
            raise RejectedInput(f"degree {self.degree} form is not a top form on {self.nvars} variables")
        return self.coeffs.get(tuple(range(self.nvars)), LaurentPoly.zero(self.nvars))

    # -------------------------------------------------------------- arithmetic

    def _check(self, other: "Form"):
        if other.nvars != self.nvars or other.degree != self.degree:
            raise RejectedInput(
                f"form shape mismatch: ({self.nvars}, {self.degree}) vs ({other.nvars}, {other.degree})"
            )

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        coeffs = dict(self.coeffs)
        for index, poly in other.coeffs.items():
            _accumulate(coeffs, index, poly)
        return Form._wrap(self.nvars, self.degree, coeffs)

    def __neg__(self) -> "Form":
        return Form._wrap(self.nvars, self.degree, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            return NotImplemented
        coeffs: Dict[MultiIndex, LaurentPoly] = {}
        for index, poly in self.coeffs.items():
            product = poly * other
            if not product.is_zero():
                coeffs[index] = product
        return Form._wrap(self.nvars, self.degree, coeffs)

    __rmul__ = __mul__

    def embed(self, nvars: int, offset: int) -> "Form":
        """Shift into a larger variable block (product charts)"""
        coeffs = {
            tuple(i + offset for i in index): poly.embed(nvars, offset)
            for index, poly in self.coeffs.items()
        }
        return Form._wrap(nvars, self.degree, coeffs)

    # ------------------------------------------------------------------ output

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        """Canonical text, one summand per multi-index in lexicographic order"""
        names = names or default_names(self.nvars)
        if not self.coeffs:
            return "0"
        pieces = []
        for index in sorted(self.coeffs):
            poly = self.coeffs[index]
            label = render_index(index, names)
            if not index:
                pieces.append(poly.render(names))
            elif poly == LaurentPoly.one(self.nvars):
                pieces.append(label)
            elif poly == LaurentPoly.constant(self.nvars, -1):
                pieces.append(f"-{label}")
            elif poly.is_monomial():
                pieces.append(f"{poly.render(names)}*{label}")
            else:
                pieces.append(f"({poly.render(names)})*{label}")
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def to_mapping(self, names: Optional[Sequence[str]] = None) -> Dict[str, str]:
        """{'dz1^dz3': '<poly>'} rendering used by section files"""
        names = names or default_names(self.nvars)
        return {render_index(index, names) or "1": self.coeffs[index].render(names) for index in sorted(self.coeffs)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.nvars, self.degree, self.coeffs) == (other.nvars, other.degree, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"Form[{self.degree}]({self.render()})"


def render_index(index: MultiIndex, names: Sequence[str]) -> str:
    return "^".join(f"d{names[i]}" for i in index)


def _accumulate(acc: Dict[MultiIndex, LaurentPoly], index: MultiIndex, poly: LaurentPoly):
    total = acc[index] + poly if index in acc else poly
    if total.is_zero():
        acc.pop(index, None)
    else:
        acc[index] = total


# ============================================================================
# Exterior calculus
# ============================================================================

def wedge(a: Form, b: Form) -> Form:
    """Exterior product a ^ b"""
    if a.nvars != b.nvars:
        raise RejectedInput(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    degree = a.degree + b.degree
    if degree > a.nvars:
        raise RejectedInput(f"degree overflow: {a.degree} + {b.degree} > {a.nvars}")
    acc: Dict[MultiIndex, LaurentPoly] = {}
    for left, f in a.coeffs.items():
        for right, g in b.coeffs.items():
            sign, index = merge_sign(left, right)
            if sign:
                product = f * g
                _accumulate(acc, index, product if sign > 0 else -product)
    return Form._wrap(a.nvars, degree, acc)


def wedge_power(a: Form, power: int) -> Form:
    """a ^ ... ^ a with `power` factors; power 0 gives the constant 1"""
    if power < 0:
        raise RejectedInput(f"negative wedge power {power}")
    result = Form.function(LaurentPoly.one(a.nvars))
    for _ in range(power):
        result = wedge(result, a)
    return result


def del_op(a: Form) -> Form:
    """Holomorphic exterior derivative: d(f dz_I) = sum_j df/dz_j dz_j ^ dz_I"""
    if a.degree == a.nvars:
        # formal zero of degree nvars + 1
        return Form._wrap(a.nvars, a.degree + 1, {})
    acc: Dict[MultiIndex, LaurentPoly] = {}
    for index, poly in a.coeffs.items():
        for var in range(a.nvars):
            if var in index:
                continue
            derivative = poly.diff(var)
            if derivative.is_zero():
                continue
            sign, new_index = merge_sign((var,), index)
            _accumulate(acc, new_index, derivative if sign > 0 else -derivative)
    return Form._wrap(a.nvars, a.degree + 1, acc)


def contract(xi: Sequence[LaurentPoly], a: Form) -> Form:
    """
    Interior product of the vector field sum xi_j d/dz_j with a.

    Left anti-derivation: d/dz_{i_k} removes dz_{i_k} with sign (-1)^k.
    """
    if len(xi) != a.nvars:
        raise RejectedInput(f"vector field has {len(xi)} components, form has {a.nvars} variables")
    if a.degree == 0:
        raise RejectedInput("degree underflow: cannot contract a 0-form")
    acc: Dict[MultiIndex, LaurentPoly] = {}
    for index, poly in a.coeffs.items():
        for k, var in enumerate(index):
            component = xi[var]
            if component.is_zero():
                continue
            product = component * poly
            _accumulate(acc, index[:k] + index[k + 1:], product if k % 2 == 0 else -product)
    return Form._wrap(a.nvars, a.degree - 1, acc)


def euler_field(nvars: int) -> List[LaurentPoly]:
    """sum_j z_j d/dz_j"""
    return [LaurentPoly.variable(nvars, j) for j in range(nvars)]


def coordinate_field(nvars: int, index: int) -> List[LaurentPoly]:
    """d/dz_index"""
    return [LaurentPoly.one(nvars) if j == index else LaurentPoly.zero(nvars) for j in range(nvars)]


# ============================================================================
# Numeric forms
# ============================================================================

class NumericForm:
    """
    A form with complex coefficients at one point.

    The generators are abstract: forms of mixed type use indices 0..n-1 for
    dz and n..2n-1 for dz-bar.
    """

    __slots__ = ("ngens", "degree", "coeffs")

    def __init__(self, ngens: int, degree: int, coeffs: Optional[Mapping[MultiIndex, complex]] = None):
        self.ngens = ngens
        self.degree = degree
        self.coeffs: Dict[MultiIndex, complex] = {i: complex(c) for i, c in (coeffs or {}).items() if c != 0}

    def __add__(self, other: "NumericForm") -> "NumericForm":
        coeffs = dict(self.coeffs)
        for index, value in other.coeffs.items():
            coeffs[index] = coeffs.get(index, 0j) + value
        return NumericForm(self.ngens, self.degree, coeffs)

    def __sub__(self, other: "NumericForm") -> "NumericForm":
        return self + other.scale(-1)

    def scale(self, factor: complex) -> "NumericForm":
        return NumericForm(self.ngens, self.degree, {i: c * factor for i, c in self.coeffs.items()})

    def wedge(self, other: "NumericForm") -> "NumericForm":
        coeffs: Dict[MultiIndex, complex] = {}
        for left, a in self.coeffs.items():
            for right, b in other.coeffs.items():
                sign, index = merge_sign(left, right)
                if sign:
                    coeffs[index] = coeffs.get(index, 0j) + sign * a * b
        return NumericForm(self.ngens, self.degree + other.degree, coeffs)

    def shifted(self, offset: int, ngens: int) -> "NumericForm":
        return NumericForm(ngens, self.degree, {tuple(i + offset for i in idx): c for idx, c in self.coeffs.items()})

    def conjugate(self) -> "NumericForm":
        return NumericForm(self.ngens, self.degree, {i: c.conjugate() for i, c in self.coeffs.items()})

    def coefficient(self, index: Sequence[int]) -> complex:
        return self.coeffs.get(tuple(index), 0j)

    def norm(self) -> float:
        """Largest coefficient modulus"""
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __repr__(self) -> str:
        return f"NumericForm[{self.degree}]({self.coeffs})"


def eval_at(f: Union[LaurentPoly, Form], point: Sequence[complex]) -> Union[complex, NumericForm]:
    """Floating evaluation; PoleError on a zero coordinate with a negative exponent"""
    if isinstance(f, LaurentPoly):
        return f.eval_at(point)
    return NumericForm(f.nvars, f.degree, {index: poly.eval_at(point) for index, poly in f.coeffs.items()})


def eval_exact(f: Union[LaurentPoly, Form], point: Sequence[Scalar]) -> Union[Scalar, Dict[MultiIndex, Scalar]]:
    """Exact evaluation at a point with Scalar coordinates"""
    if isinstance(f, LaurentPoly):
        return f.eval_exact(point)
    values = {index: poly.eval_exact(point) for index, poly in f.coeffs.items()}
    return {index: value for index, value in values.items() if value}


# ============================================================================
# Parsing
# ============================================================================

_RATIONAL = r"\d+(?:/\d+)?"
_GAUSSIAN = re.compile(rf"^\((-?{_RATIONAL})([+-])({_RATIONAL})i\)$")
_REAL = re.compile(rf"^-?{_RATIONAL}$")
_POWER = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")
_TERM_SPLIT = re.compile(r" ([+-]) ")


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if _REAL.match(text):
        return Scalar(Fraction(text))
    match = _GAUSSIAN.match(text)
    if match:
        im = Fraction(match.group(3))
        return Scalar(Fraction(match.group(1)), im if match.group(2) == "+" else -im)
    raise ValueError(f"not a scalar: {text!r}")


def parse_laurent(text: str, names: Sequence[str]) -> LaurentPoly:
    """Inverse of LaurentPoly.render for the given variable names"""
    nvars = len(names)
    positions = {name: i for i, name in enumerate(names)}
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    parts = _TERM_SPLIT.split(text)
    signed = [(1, parts[0])] + [(1 if op == "+" else -1, term) for op, term in zip(parts[1::2], parts[2::2])]
    pairs = []
    for sign, term in signed:
        term = term.strip()
        if term.startswith("-"):
            sign, term = -sign, term[1:]
        coeff = Scalar(sign)
        exp = [0] * nvars
        for factor in term.split("*"):
            factor = factor.strip()
            if _REAL.match(factor) or _GAUSSIAN.match(factor):
                coeff = coeff * parse_scalar(factor)
                continue
            match = _POWER.match(factor)
            if not match:
                raise ValueError(f"cannot read factor {factor!r}")
            name = match.group(1)
            if name not in positions:
                raise ValueError(f"unknown variable {name!r} (chart variables: {', '.join(names)})")
            exp[positions[name]] += int(match.group(2) or 1)
        pairs.append((exp, coeff))
    return LaurentPoly.from_terms(nvars, pairs)


def parse_form_terms(mapping: Mapping[str, str], names: Sequence[str], degree: int) -> Form:
    """Inverse of Form.to_mapping"""
    nvars = len(names)
    positions = {f"d{name}": i for i, name in enumerate(names)}
    pairs = []
    for label, body in mapping.items():
        if label == "1":
            indices: List[int] = []
        else:
            indices = []
            for part in label.split("^"):
                if part not in positions:
                    raise ValueError(f"unknown differential {part!r}")
                indices.append(positions[part])
        if len(indices) != degree:
            raise ValueError(f"term {label!r} does not have degree {degree}")
        pairs.append((indices, parse_laurent(body, names)))
    return Form.from_terms(nvars, degree, pairs)
