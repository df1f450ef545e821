"""Canonical text and JSON rendering.

Byte-identical output for identical input is part of the contract: every
collection is emitted in the basis order, signs are normalized, and the
JSON schema round-trips."""

from fractions import Fraction

from .roots import K_KEY, D_KEY, idx_grade, root_idx, cartan_idx
from .poly import Poly, VectorField, OneForm, Window


def label_str(data, idx):
    """E/F/H in rank one; E[coords]/F[coords]/H<i> in general."""
    if idx[0] == 'h':
        return "H" if data.rank == 1 else "H%d" % idx[1]
    coords = idx[1]
    pos = coords in data.finite.positive_set
    if data.rank == 1:
        return "E" if pos else "F"
    if pos:
        return "E[%s]" % ",".join(str(c) for c in coords)
    return "F[%s]" % ",".join(str(-c) for c in coords)


def idx_str(data, idx):
    return "%s,%d" % (label_str(data, idx), idx_grade(idx))


def var_str(data, idx):
    return "X^{%s}" % idx_str(data, idx)


def coeff_str(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def mono_str(data, mono):
    parts = []
    for v, e in sorted(mono, key=lambda p: data.sort_key(p[0])):
        if e == 1:
            parts.append(var_str(data, v))
        else:
            parts.append("(%s)^%d" % (var_str(data, v), e))
    return "*".join(parts)


def poly_terms(data, p: Poly):
    """(sign, magnitude-string) per term in canonical order."""
    out = []
    for mono, c in p.sorted_terms(data.sort_key):
        mag = abs(c)
        body = mono_str(data, mono)
        if not body:
            s = coeff_str(mag)
        elif mag == 1:
            s = body
        else:
            s = "%s*%s" % (coeff_str(mag), body)
        out.append(("-" if c < 0 else "+", s))
    return out


def poly_str(data, p: Poly):
    terms = poly_terms(data, p)
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += " %s %s" % (sign, body)
    return text


def vf_str(data, v: VectorField, indent="  "):
    lines = []
    for key in sorted(v.coeffs, key=data.sort_key):
        p = v.coeffs[key]
        lines.append("%s+ (%s)*D_{%s}" % (indent, poly_str(data, p),
                                          idx_str(data, key)))
    return "\n".join(lines) if lines else indent + "0"


def oneform_str(data, f: OneForm, indent="  "):
    lines = []
    for key in sorted(f.coeffs, key=data.sort_key):
        lines.append("%s+ (%s)*dX^{%s}" % (indent,
                                           poly_str(data, f.coeffs[key]),
                                           idx_str(data, key)))
    return "\n".join(lines) if lines else indent + "0"


# ---------------------------------------------------------------------------
# states


def _sym_str(data, s):
    if s[0] == 'g':
        return "γ^{%s}[%d]" % (idx_str(data, s[1]), -s[2])
    if s[0] == 'b':
        return "β_{%s}[%d]" % (idx_str(data, s[1]), -s[2])
    if s[0] == 'S':
        la = label_str(data, (s[1][0], s[1][1], 0))
        lb = label_str(data, (s[2][0], s[2][1], 0))
        return "S^{%s}_{%s,%d}[%d]" % (la, lb, s[3], -s[4])
    if s[0] == 'D':
        return "D[%d]" % (-s[1])
    return "b_%d[%d]" % (s[1], -s[2])


def state_terms(data, st):
    def term_key(item):
        (mono, z), _ = item
        return (tuple((_kind_rank(s), data_sort(data, s)) for s in mono), z)
    items = sorted(st.terms.items(), key=term_key)
    out = []
    for (mono, z), c in items:
        body = " ".join(_sym_str(data, s) for s in mono)
        mag = abs(c)
        head = []
        if z:
            head.append("z" if z == 1 else "z^%d" % z)
        if mag != 1 or not (body or head):
            head.append(coeff_str(mag))
        prefix = "*".join(head)
        if body:
            text = (prefix + "*" if prefix else "") + body + " |0>"
        else:
            text = (prefix + "*" if prefix else "") + "|0>"
        out.append(("-" if c < 0 else "+", text))
    return out


def _kind_rank(s):
    return {'S': 0, 'D': 1, 'g': 2, 'b': 3, 'p': 4}[s[0]]


def data_sort(data, s):
    if s[0] in ('g', 'b'):
        return (data.sort_key(s[1]), s[-1])
    return (tuple(), s[-1])


def state_str(data, st, indent="  "):
    terms = state_terms(data, st)
    if not terms:
        return indent + "0"
    return "\n".join("%s%s %s" % (indent, sign, body)
                     for sign, body in terms)


# ---------------------------------------------------------------------------
# JSON schema: terms as arrays of {coeff, factors: [{kind, label, n, mode}]}


def _label_json(data, idx):
    if idx[0] == 'h':
        return {"kind": "cartan", "node": idx[1]}
    return {"kind": "root", "coords": list(idx[1])}


def _label_from_json(d):
    if d["kind"] == "cartan":
        return ('h', d["node"])
    return ('r', tuple(d["coords"]))


def json_poly(data, p: Poly):
    terms = []
    for mono, c in p.sorted_terms(data.sort_key):
        terms.append({
            "coeff": coeff_str(c),
            "factors": [dict(_label_json(data, v), n=idx_grade(v), exp=e)
                        for v, e in sorted(mono,
                                           key=lambda q: data.sort_key(q[0]))],
        })
    return terms


def parse_poly(terms):
    p = {}
    for t in terms:
        mono = []
        for f in t["factors"]:
            lab = _label_from_json(f)
            mono.append(((lab[0], lab[1], f["n"]), f["exp"]))
        mono = tuple(sorted(mono))
        p[mono] = p.get(mono, Fraction(0)) + Fraction(t["coeff"])
    return Poly({m: c for m, c in p.items() if c})


def json_vf(data, v: VectorField):
    return {
        "window": {"side": v.window.side, "cutoff": v.window.cutoff},
        "coeffs": [dict(_label_json(data, k), n=idx_grade(k),
                        poly=json_poly(data, v.coeffs[k]))
                   for k in sorted(v.coeffs, key=data.sort_key)],
    }


def parse_vf(d):
    coeffs = {}
    for entry in d["coeffs"]:
        lab = _label_from_json(entry)
        coeffs[(lab[0], lab[1], entry["n"])] = parse_poly(entry["poly"])
    return VectorField(coeffs, Window(d["window"]["side"],
                                      d["window"]["cutoff"]))


def json_state(data, st):
    terms = []
    for (mono, z), c in sorted(st.terms.items(),
                               key=lambda t: (tuple(map(str, t[0][0])),
                                              t[0][1])):
        factors = []
        for s in mono:
            if s[0] in ('g', 'b'):
                factors.append(dict(_label_json(data, s[1]),
                                    n=idx_grade(s[1]),
                                    kind2="gamma" if s[0] == 'g' else "beta",
                                    mode=-s[-1]))
            elif s[0] == 'S':
                factors.append({"kind2": "S",
                                "upper": _label_json(data,
                                                     (s[1][0], s[1][1], 0)),
                                "lower": _label_json(data,
                                                     (s[2][0], s[2][1], 0)),
                                "n": s[3], "mode": -s[4]})
            elif s[0] == 'D':
                factors.append({"kind2": "D", "mode": -s[1]})
            else:
                factors.append({"kind2": "boson", "i": s[1], "mode": -s[2]})
        entry = {"coeff": coeff_str(c), "factors": factors}
        if z:
            entry["zpow"] = z
        terms.append(entry)
    return terms


def parse_state(terms):
    from .states import VAState
    out = VAState()
    for t in terms:
        syms = []
        for f in t["factors"]:
            k2 = f["kind2"]
            if k2 in ("gamma", "beta"):
                lab = _label_from_json(f)
                syms.append(("g" if k2 == "gamma" else "b",
                             (lab[0], lab[1], f["n"]), -f["mode"]))
            elif k2 == "S":
                up = _label_from_json(f["upper"])
                lo = _label_from_json(f["lower"])
                syms.append(('S', up, lo, f["n"], -f["mode"]))
            elif k2 == "D":
                syms.append(('D', -f["mode"]))
            else:
                syms.append(('p', f["i"], -f["mode"]))
        out = out + VAState.monomial(syms, Fraction(t["coeff"]),
                                     t.get("zpow", 0))
    return out
