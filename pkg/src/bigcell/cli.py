"""Batch front-end.

Subcommands: expand-rho, expand-theta, solve-phi, verify-hom, c-coeffs,
zeta-check, stabilize-check.  Configuration comes from an optional JSON
file plus flag overrides; identical configuration produces byte-identical
output.  Exit codes: 0 success, 1 verification/golden failure, 2 usage,
configuration or window errors.
"""

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .roots import build_affine_data, RootDataError, root_idx, cartan_idx, \
    K_KEY, D_KEY
from .loop import StructureConstants, LieElt
from .realize import Realization
from .poly import WindowError
from .states import DivergenceError
from .splitting import (solve_phi, verify_splitting, c_coefficients,
                        ThetaMap, EngineError, lplus_stabilization,
                        generator_set)
from .zeta import (regulated_first_product, zeta_of_series,
                   ReconstructionError, RationalSeries)
from . import render


class UsageError(ValueError):
    pass


def parse_matrix(text):
    rows = json.loads(text)
    return tuple(tuple(int(x) for x in row) for row in rows)


def get_data(cfg):
    alg = cfg.get('algebra', 'A1~')
    if isinstance(alg, str) and alg.strip().startswith('['):
        return build_affine_data(parse_matrix(alg))
    if isinstance(alg, list):
        return build_affine_data(tuple(tuple(int(x) for x in r) for r in alg))
    return build_affine_data(alg)


def parse_generator(data, text):
    """e<i>, f<i>, hv<i>, h<i>, k, d, or '<label>,<n>' with label E/F/H
    (rank one), H<i>, E[c,...] or F[c,...]."""
    s = text.strip()
    sc = StructureConstants(data)
    low = s.lower()
    if low == 'k':
        return LieElt.basis(K_KEY)
    if low == 'd':
        return LieElt.basis(D_KEY)
    for prefix, kind in (('hv', 'hv'), ('e', 'e'), ('f', 'f')):
        if low.startswith(prefix) and low[len(prefix):].isdigit():
            return sc.chevalley_serre()[(kind, int(low[len(prefix):]))]
    if ',' in s:
        lab, n = s.rsplit(',', 1)
        n = int(n)
        lab = lab.strip()
        if data.rank == 1 and lab in ('E', 'F', 'H'):
            if lab == 'H':
                return LieElt.basis(cartan_idx(1, n))
            coords = (1,) if lab == 'E' else (-1,)
            return LieElt.basis(root_idx(coords, n))
        if lab.startswith('H') and lab[1:].isdigit():
            return LieElt.basis(cartan_idx(int(lab[1:]), n))
        if lab[0] in 'EF' and lab[1:].startswith('['):
            coords = tuple(int(x) for x in lab[2:-1].split(','))
            if lab[0] == 'F':
                coords = tuple(-c for c in coords)
            return LieElt.basis(root_idx(coords, n))
    if low.startswith('h') and low[1:].isdigit():
        return LieElt.basis(cartan_idx(int(low[1:]), 0))
    raise UsageError("cannot parse generator %r" % text)


def gen_name(data, x: LieElt):
    if len(x) == 1:
        idx, c = next(iter(x.items()))
        if c == 1:
            if idx == K_KEY:
                return "k"
            if idx == D_KEY:
                return "d"
            return "J_{%s}" % render.idx_str(data, idx)
    return "(" + " + ".join(
        "%s*J_{%s}" % (render.coeff_str(c), render.idx_str(data, i))
        for i, c in sorted(x.items(), key=lambda t: str(t[0]))) + ")"


# ---------------------------------------------------------------------------
# subcommands


def cmd_expand_rho(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    k = cfg['cutoff_k']
    if k < 2:
        raise UsageError("cutoff_k must be at least 2 for realization tasks")
    names = cfg.get('generators') or ['e1', 'e0', 'f0', 'f1']
    blocks = []
    for name in names:
        x = parse_generator(data, name)
        vf = real.rho(x, k)
        if cfg.get('output') == 'json':
            blocks.append({'generator': name,
                           'rho': render.json_vf(data, vf)})
        else:
            out.write("rho(%s) =\n" % gen_name(data, x))
            out.write(render.vf_str(data, vf) + "\n\n")
    if cfg.get('output') == 'json':
        out.write(json.dumps({'algebra': cfg.get('algebra', 'A1~'),
                              'cutoff': k, 'blocks': blocks},
                             indent=1, sort_keys=True) + "\n")
    return 0


def _solved_phi(cfg, real):
    if cfg.get('phi_zero'):
        return {}, {'gauge': 'zero', 'free_after_gauge': 0}
    return solve_phi(real, cfg['cutoff_k'], n_max=cfg.get('n_max', 2),
                     pair_n=cfg.get('pair_n', 1),
                     anchor_n=cfg.get('anchor_n'),
                     gauge=cfg.get('gauge', 'cs'))


def cmd_solve_phi(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    phi, report = _solved_phi(cfg, real)
    if cfg.get('output') == 'json':
        payload = {
            'report': {k: v for k, v in report.items()
                       if k != 'free_unknowns'},
            'phi': {gen_name(data, LieElt.basis(g)): [
                dict(key=render.idx_str(data, key),
                     poly=render.json_poly(data, p))
                for key, p in sorted(phi[g].coeffs.items(),
                                     key=lambda t: data.sort_key(t[0]))]
                for g in sorted(phi, key=data.sort_key)},
        }
        out.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        return 0
    for g in sorted(phi, key=data.sort_key):
        out.write("phi(%s) =\n" % gen_name(data, LieElt.basis(g)))
        out.write(render.oneform_str(data, phi[g]) + "\n")
    out.write("unknowns: %d  free after gauge: %d\n"
              % (report.get('unknowns', 0), report['free_after_gauge']))
    return 0


def cmd_verify_hom(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    phi, srep = _solved_phi(cfg, real)
    report = verify_splitting(real, phi, cfg['cutoff_k'],
                              cfg.get('n_max_verify', 1))
    cs, deriv = c_coefficients(real, strict=False)
    c_ok = all(d['matches_formula'] for d in deriv.values())
    payload = {
        'algebra': str(cfg.get('algebra', 'A1~')),
        'cutoff': cfg['cutoff_k'],
        'all_safe_zero': report['all_safe_zero'],
        'c_extracted': {i: render.coeff_str(v) for i, v in cs.items()},
        'c_matches_formula': c_ok,
        'solve': {k: v for k, v in srep.items() if k != 'free_unknowns'},
        'failures': [
            {'x': render.idx_str(data, r['x']) if r['x'] not in (K_KEY, D_KEY)
             else r['x'][0],
             'y': render.idx_str(data, r['y']) if r['y'] not in (K_KEY, D_KEY)
             else r['y'][0],
             'safe': r['safe'], 'zero': r['zero'], 'zone': r['zone']}
            for r in report['pairs'] if not (r['safe'] and r['zero'])],
    }
    out.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    return 0 if report['all_safe_zero'] else 1


def cmd_c_coeffs(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    cs, deriv = c_coefficients(real, strict=False)
    payload = {str(i): {
        'extracted': render.coeff_str(cs[i]),
        'closed_formula': render.coeff_str(deriv[i]['closed_formula']),
        'matches_formula': deriv[i]['matches_formula'],
        'quadratic_terms': deriv[i]['quadratic_terms'] and {
            k: render.coeff_str(v)
            for k, v in deriv[i]['quadratic_terms'].items()},
    } for i in sorted(cs)}
    out.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    return 0 if all(d['matches_formula'] for d in deriv.values()) else 1


def cmd_expand_theta(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    phi, _ = _solved_phi(cfg, real)
    theta = ThetaMap(real, cfg['cutoff_k'], phi)
    names = cfg.get('generators') or ['e1', 'e0', 'f0', 'f1']
    for name in names:
        x = parse_generator(data, name)
        st = theta.state(x)
        if cfg.get('output') == 'json':
            out.write(json.dumps({'generator': name,
                                  'theta': render.json_state(data, st)},
                                 indent=1, sort_keys=True) + "\n")
        else:
            out.write("theta(%s) =\n" % gen_name(data, x))
            out.write(render.state_str(data, st) + "\n\n")
    return 0


DEFAULT_ZETA_PAIRS = ["H,0:H,0", "E,1:F,-1", "H,1:H,-1", "E,-2:F,2"]


def cmd_zeta(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    phi, _ = _solved_phi(cfg, real)
    pair_texts = cfg.get('pairs')
    if pair_texts is None:
        pair_texts = list(DEFAULT_ZETA_PAIRS) if data.rank == 1 else []
    results = []
    for text in pair_texts:
        xs, ys = text.split(':')
        x, y = parse_generator(data, xs), parse_generator(data, ys)
        series = regulated_first_product(real, phi, x, y, cfg['cutoff_k'])
        entry = {'pair': text,
                 'prefix': [render.coeff_str(c) for c in series.coeffs]}
        try:
            rec, const = zeta_of_series(series)
            num, den = rec.reconstructed
            entry['rational'] = {
                'num': [render.coeff_str(c) for c in num],
                'den': [render.coeff_str(c) for c in den],
                'certificate': rec.certificate,
            }
            entry['constant_term'] = render.coeff_str(const)
        except ReconstructionError as e:
            entry['error'] = str(e)
        results.append(entry)
    out.write(json.dumps({'pairs': results}, indent=1, sort_keys=True) + "\n")
    return 0


def cmd_stabilize_check(cfg, out):
    data = get_data(cfg)
    real = Realization(StructureConstants(data))
    k = cfg['cutoff_k']
    rng = random.Random(11)
    ok_lie = all(real.check_stabilizes(LieElt.basis(g), k, rng=rng)
                 for g in generator_set(data, 1))
    phi, _ = _solved_phi(cfg, real)
    ok_va = lplus_stabilization(real, phi, k, 1, rng)
    out.write(json.dumps({'lie_action_stabilizes': ok_lie,
                          'vertex_action_stabilizes': ok_va},
                         indent=1, sort_keys=True) + "\n")
    return 0 if (ok_lie and ok_va) else 1


COMMANDS = {
    'expand-rho': cmd_expand_rho,
    'expand-theta': cmd_expand_theta,
    'solve-phi': cmd_solve_phi,
    'verify-hom': cmd_verify_hom,
    'c-coeffs': cmd_c_coeffs,
    'zeta-check': cmd_zeta,
    'stabilize-check': cmd_stabilize_check,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog='bigcell',
        description='exact truncated free-field realization engine')
    ap.add_argument('command', choices=sorted(COMMANDS))
    ap.add_argument('--config', help='JSON configuration file')
    ap.add_argument('--algebra', help="series tag like 'A1~' or a Cartan "
                                      "matrix as JSON")
    ap.add_argument('--cutoff', type=int, help='truncation cutoff k')
    ap.add_argument('--gap', type=int, help='widening-gap parameter K')
    ap.add_argument('--depth', type=int, help='maximal state depth')
    ap.add_argument('--regulator', action='store_true')
    ap.add_argument('--gauge', choices=['cs', 'free'])
    ap.add_argument('--json', action='store_true')
    ap.add_argument('--golden', help='directory of golden files to diff '
                                     'against')
    ap.add_argument('--pair', action='append',
                    help="zeta pair like 'H,1:H,-1' (repeatable)")
    ap.add_argument('--generators', help='comma-separated generator names')
    ap.add_argument('--phi-zero', action='store_true',
                    help='force the one-form correction to zero')
    ap.add_argument('--n-max', type=int, help='ansatz t-grade range')
    ap.add_argument('--pair-n', type=int, help='equation pair range')
    ap.add_argument('--anchor-n', type=int, help='equation anchor range')
    ap.add_argument('--n-max-verify', type=int,
                    help='pair range of the verification suite')
    return ap


def load_config(args):
    cfg = {}
    if args.config:
        with open(args.config) as f:
            cfg.update(json.load(f))
    if args.algebra is not None:
        cfg['algebra'] = args.algebra
    if args.cutoff is not None:
        cfg['cutoff_k'] = args.cutoff
    if args.gap is not None:
        cfg['gap_K'] = args.gap
    if args.depth is not None:
        cfg['depth_max'] = args.depth
    if args.regulator:
        cfg['regulator'] = True
    if args.gauge:
        cfg['gauge'] = args.gauge
    if args.json:
        cfg['output'] = 'json'
    if args.pair:
        cfg['pairs'] = args.pair
    if args.generators:
        cfg['generators'] = [g.strip()
                             for g in args.generators.split(',') if g.strip()]
    if args.phi_zero:
        cfg['phi_zero'] = True
    if args.n_max is not None:
        cfg['n_max'] = args.n_max
    if args.pair_n is not None:
        cfg['pair_n'] = args.pair_n
    if args.anchor_n is not None:
        cfg['anchor_n'] = args.anchor_n
    if args.n_max_verify is not None:
        cfg['n_max_verify'] = args.n_max_verify
    cfg.setdefault('cutoff_k', 4)
    cfg.setdefault('gap_K', 2)
    cfg.setdefault('depth_max', 2)
    for key in ('cutoff_k', 'gap_K', 'depth_max'):
        if not isinstance(cfg[key], int) or cfg[key] <= 0:
            raise UsageError("%s must be a positive integer" % key)
    return cfg


def main(argv=None):
    import io
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        buf = io.StringIO()
        status = COMMANDS[args.command](cfg, buf)
        text = buf.getvalue()
        sys.stdout.write(text)
        if args.golden:
            path = os.path.join(args.golden, args.command + ".txt")
            with open(path) as f:
                want = f.read()
            if want != text:
                sys.stderr.write("golden mismatch against %s\n" % path)
                return 1
        return status
    except (UsageError, RootDataError, json.JSONDecodeError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except (WindowError, DivergenceError) as e:
        sys.stderr.write("insufficient window: %s\n" % e)
        return 2
    except EngineError as e:
        sys.stderr.write("engine failure: %s\n" % e)
        return 1


if __name__ == '__main__':
    sys.exit(main())
