"""
Main orchestrator for the G2 Monge-Ampere pipeline.
Runs root-system, invariant-form, equation and equivalence computations and
prints their reports as text or as deterministic JSON.
"""

import argparse
import random
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import logging

from errors import CertificateError, PipelineError, UsageError
from equivalence import (
    chart_rank_count, check_tau_identities, classify, point_to_json, rank_profile, separate, symbol, tau, xi,
)
from exterior import check_completeness_certificate, check_kernel_certificate, evaluate_poly, poly_ratio, poly_to_str
from g2rep import (
    MBASIS, all_operators, bi_lagrangian_splitting, check_sl2_triple, is_ad_invariant, is_isotropic, pairing_matrix,
)
from invariants import (
    EXPECTED_DIMENSIONS, GENERATOR_NAMES, PRODUCTS, dimension_ladder, generator, invariant_basis, labels, product,
    sl2_operators, solver_basis,
)
from mae import (
    catalogue, entry_names, find_entry, published_polynomials, q1_from_minors, q1_poly, q3_from_minors, q3_poly,
)
from models import (
    ClassificationReport, EquationReport, ErrorResponse, FormsReport, GradationsReport, InvariantsReport,
    OutputEnvelope, RootsReport, SelftestReport, SymbolReport,
)
from parakahler import kaehler_form, random_structure
from request_validator import RequestValidator
from rootsys import (
    build_g2, compositions, enumerate_gradations, gradation, gradation_to_json, graded_dimensions, sl_flag_gradation,
)
from utils import dump_json, load_config, matrix_to_strings, print_summary, setup_logging, to_qq

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# depth of the three G2 gradations, keyed by pi1
G2_DEPTHS = {(1,): 3, (2,): 2, (1, 2): 5}


def _named_form_doc(nf, unicode: bool = False) -> Dict[str, Any]:
    doc = nf.to_json()
    doc['rendered'] = nf.form.render(labels(unicode), unicode)
    return doc


class PipelineOrchestrator:
    """Runs each pipeline command and returns a result dictionary."""

    def __init__(self, config_path: str = "config.json", config: Optional[Dict[str, Any]] = None):
        """Initialize the orchestrator with configuration."""
        self.config = config if config is not None else load_config(config_path)
        self.validator = RequestValidator()

    def _run(self, command: str, build: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        try:
            logger.info(f"Running {command}...")
            payload = build()
            return {"success": True, "command": command, "payload": payload}
        except UsageError as e:
            logger.error(f"{command}: {e}")
            return {"success": False, "command": command, "kind": "usage", "error": str(e)}
        except CertificateError as e:
            logger.error(f"{command}: {e}")
            return {"success": False, "command": command, "kind": "certificate",
                    "invariant": e.invariant, "error": str(e)}
        except PipelineError as e:
            logger.error(f"{command}: {e}")
            return {"success": False, "command": command, "kind": "domain", "error": str(e)}
        except Exception as e:
            logger.error(f"Error processing {command}: {str(e)}", exc_info=True)
            return {"success": False, "command": command, "kind": "internal", "error": str(e)}

    def _check(self, result: Tuple[bool, str]):
        is_valid, error_msg = result
        if not is_valid:
            raise UsageError(error_msg)

    # --- commands ------------------------------------------------------------

    def process_roots(self) -> Dict[str, Any]:
        def build():
            g2 = build_g2()
            a1 = g2.simple_roots()[0]
            delta = g2.maximal_root()
            pos, neg = bi_lagrangian_splitting()
            checks = {
                '(a1,d)=0': g2.inner(a1, delta) == 0,
                'sl2 triple': all(check_sl2_triple().values()),
                'pairing ad-invariant': all(is_ad_invariant(op) for op in all_operators()),
                'm+ isotropic': is_isotropic(pos),
                'm- isotropic': is_isotropic(neg),
            }
            if not all(checks.values()):
                failed = [name for name, ok in checks.items() if not ok]
                raise CertificateError('root system checks', ', '.join(failed))
            report = RootsReport(
                algebra=g2.name,
                simple_roots=[r.name() for r in g2.simple_roots()],
                positive_roots=[r.name() for r in g2.positive_roots],
                gram=matrix_to_strings(g2.gram),
                cartan=matrix_to_strings(g2.cartan_matrix()),
                maximal_root=delta.name(),
                pairing=matrix_to_strings(pairing_matrix()),
                checks=checks,
            )
            return report.model_dump()
        return self._run('roots', build)

    def process_gradations(self, algebra: str = 'g2', pi1: Optional[str] = None,
                           flag: Optional[str] = None) -> Dict[str, Any]:
        def build():
            self._check(self.validator.validate_algebra(algebra))
            tables = []
            if algebra == 'g2':
                g2 = build_g2()
                if pi1:
                    self._check(self.validator.validate_pi1(pi1))
                    grads = [gradation(g2, self.validator.parse_pi1(pi1))]
                else:
                    grads = enumerate_gradations(g2)
                for grad in grads:
                    doc = gradation_to_json(grad)
                    doc['dimensions'] = {str(i): d for i, d in graded_dimensions(g2, grad.pi1).items()}
                    tables.append(doc)
            else:
                if not flag:
                    raise UsageError("the sl algebra needs --flag, e.g. --flag 1,1")
                self._check(self.validator.validate_flag(flag))
                sl = sl_flag_gradation(self.validator.parse_flag(flag))
                if sl.violations:
                    raise CertificateError('bracket closure', f"{sl.violations} violations for flag {flag}")
                tables.append(sl.to_json())
            return GradationsReport(algebra=algebra, tables=tables).model_dump()
        return self._run('gradations', build)

    def process_invariants(self, degree: Optional[int] = None, unicode: bool = False) -> Dict[str, Any]:
        def build():
            degrees = list(EXPECTED_DIMENSIONS)
            if degree is not None:
                self._check(self.validator.validate_degree(degree))
                degrees = [degree]
            spaces = []
            for k in degrees:
                named = invariant_basis(k)
                if len(named) != EXPECTED_DIMENSIONS[k]:
                    raise CertificateError('dimension ladder', f"degree {k}: {len(named)} != {EXPECTED_DIMENSIONS[k]}")
                spaces.append({
                    'degree': k,
                    'dimension': len(named),
                    'expected': EXPECTED_DIMENSIONS[k],
                    'forms': [_named_form_doc(nf, unicode) for nf in named],
                })
            return InvariantsReport(spaces=spaces).model_dump()
        return self._run('invariants', build)

    def process_forms(self, unicode: bool = False) -> Dict[str, Any]:
        def build():
            generators = [_named_form_doc(generator(name), unicode) for name in GENERATOR_NAMES]
            five_forms = [_named_form_doc(product(names), unicode) for names in PRODUCTS[5]]
            return FormsReport(generators=generators, five_forms=five_forms).model_dump()
        return self._run('forms', build)

    def process_equations(self, fmt: str = 'expanded', dictionary: Optional[str] = None) -> Dict[str, Any]:
        dictionary = dictionary or self.config.get('darboux_signs', 'alternating')

        def build():
            self._check(self.validator.validate_format(fmt))
            self._check(self.validator.validate_dictionary(dictionary))
            entries = catalogue(dictionary)
            return EquationReport(
                dictionary=dictionary,
                format=fmt,
                equations=[e.to_json(fmt) for e in entries],
            ).model_dump()
        return self._run('equations', build)

    def process_classify(self, seed: Optional[int] = None, samples: Optional[int] = None) -> Dict[str, Any]:
        seed = self.config.get('seed', 0) if seed is None else seed
        samples = self.config.get('samples', 100) if samples is None else samples

        def build():
            self._check(self.validator.validate_seed(seed))
            self._check(self.validator.validate_samples(samples))
            entries = catalogue()
            by_tau = classify(entries, [tau()])
            by_both = classify(entries, [tau(), xi()])
            mismatches = check_tau_identities(entries)
            report = separate(find_entry('Q1', entries), find_entry('L1', entries),
                              samples=samples, seed=seed, partition=by_both)
            return ClassificationReport(
                partitions=[by_tau.to_json(), by_both.to_json()],
                tau_mismatches=[list(m) for m in mismatches],
                separation=report.to_json(),
            ).model_dump()
        return self._run('classify', build)

    def process_symbol(self, name: str, point: Optional[str] = None, seed: Optional[int] = None,
                       samples: Optional[int] = None) -> Dict[str, Any]:
        seed = self.config.get('seed', 0) if seed is None else seed
        samples = self.config.get('samples', 100) if samples is None else samples

        def build():
            entries = catalogue()
            self._check(self.validator.validate_equation_name(name, entry_names(entries)))
            self._check(self.validator.validate_seed(seed))
            self._check(self.validator.validate_samples(samples))
            entry = find_entry(name, entries)
            doc = {'name': entry.display_name, 'expanded': poly_to_str(entry.poly)}
            if point is not None:
                self._check(self.validator.validate_point(point))
                values = [to_qq(x) for x in self.validator.parse_point(point)]
                smb = symbol(entry.poly, values)
                doc.update({
                    'point': point_to_json(values),
                    'on_hypersurface': evaluate_poly(entry.poly, values) == 0,
                    'matrix': matrix_to_strings(smb.matrix),
                    'rank': smb.rank,
                    'attained': [smb.rank],
                    'samples': 1,
                })
            else:
                profile = rank_profile(entry, samples, seed)
                doc.update({
                    'attained': profile.attained,
                    'constant': profile.is_constant() if profile.ranks else None,
                    'rank': profile.ranks[0] if profile.is_constant() and profile.ranks else None,
                    'samples': len(profile.ranks),
                })
            return SymbolReport(**doc).model_dump()
        return self._run('symbol', build)

    def process_selftest(self, seed: Optional[int] = None, samples: Optional[int] = None) -> Dict[str, Any]:
        seed = self.config.get('seed', 0) if seed is None else seed
        samples = self.config.get('samples', 100) if samples is None else samples

        def build():
            self._check(self.validator.validate_seed(seed))
            self._check(self.validator.validate_samples(samples))
            checks = [self._certificate(name, fn) for name, fn in self.certificates(seed, samples)]
            passed = all(c['passed'] for c in checks)
            if not passed:
                logger.error(f"selftest: {sum(not c['passed'] for c in checks)} certificates failed")
            return SelftestReport(passed=passed, checks=checks).model_dump()
        return self._run('selftest', build)

    # --- certificates -------------------------------------------------------

    def _certificate(self, name: str, fn: Callable[[], Tuple[bool, str]]) -> Dict[str, Any]:
        try:
            passed, detail = fn()
        except PipelineError as e:
            passed, detail = False, str(e)
        if not passed:
            logger.error(f"certificate {name} failed: {detail}")
        return {'name': name, 'passed': bool(passed), 'detail': detail}

    def certificates(self, seed: int, samples: int) -> List[Tuple[str, Callable[[], Tuple[bool, str]]]]:
        def sl2():
            results = check_sl2_triple()
            return all(results.values()), ', '.join(k for k, v in results.items() if not v)

        def pairing():
            bad = [op.name for op in all_operators() if not is_ad_invariant(op)]
            return not bad, ', '.join(bad)

        def bi_isotropy():
            pos, neg = bi_lagrangian_splitting()
            return is_isotropic(pos) and is_isotropic(neg), ""

        def cartan():
            g2 = build_g2()
            return matrix_to_strings(g2.cartan_matrix()) == [['2', '-1'], ['-3', '2']], ""

        def g2_gradations():
            g2 = build_g2()
            depths = {tuple(sorted(g.pi1)): g.depth for g in enumerate_gradations(g2)}
            return depths == G2_DEPTHS, f"depths {depths}"

        def sl_flags():
            bad = [dims for n in range(2, 6) for dims in compositions(n) if sl_flag_gradation(dims).violations]
            return not bad, f"violations for {bad}" if bad else ""

        def ladder():
            dims = dimension_ladder()
            return dims == EXPECTED_DIMENSIONS, f"dimensions {dims}"

        def resubstitution():
            ops = sl2_operators()
            ok = all(check_kernel_certificate(ops, solver_basis(k))
                     and check_completeness_certificate(ops, k, len(MBASIS), solver_basis(k))
                     for k in EXPECTED_DIMENSIONS)
            return ok, ""

        def membership():
            for k in EXPECTED_DIMENSIONS:
                invariant_basis(k)
            return True, ""

        def equations():
            entries = catalogue()
            missing = []
            for short, poly in published_polynomials().items():
                name = 'w-4^E_d' if short == 'M44' else short
                if poly_ratio(find_entry(name, entries).poly, poly) is None:
                    missing.append(short)
            for short, poly in (('Q1', q1_poly()), ('Q3', q3_poly())):
                if poly_ratio(find_entry(short, entries).poly, poly) not in (1, -1):
                    missing.append(f"{short} exact")
            return not missing, ', '.join(missing)

        def minor_identities():
            return q1_from_minors() == q1_poly() and q3_from_minors() == q3_poly(), ""

        def symplectic():
            return tau().is_symplectic() and xi().is_symplectic(), ""

        def tau_identities():
            mismatches = check_tau_identities()
            return not mismatches, ', '.join(f"{a}->{b}" for a, b in mismatches)

        def classification():
            six = classify(catalogue(), [tau()])
            four = classify(catalogue(), [tau(), xi()])
            ok = len(six.classes) == 6 and sorted(four.representatives) == ['L1', 'L2', 'Q1', 'Q3']
            return ok, f"{len(six.classes)} classes under tau; representatives {', '.join(four.representatives)}"

        def separation():
            entries = catalogue()
            report = separate(find_entry('Q1', entries), find_entry('L1', entries), samples=samples, seed=seed)
            generic = chart_rank_count(find_entry('Q1', entries), 4, samples, seed)
            ok = report.verdict == 'separated' and generic >= 95 * samples // 100
            return ok, f"verdict {report.verdict}; rank 4 at {generic} of {samples} samples"

        def para_kaehler():
            rng = random.Random(seed)
            for _ in range(5):
                op, omega, g = random_structure(2, rng)
                if kaehler_form(g, op).matrix != omega.matrix:
                    return False, "round trip failed"
            return True, ""

        return [
            ('sl2 triple', sl2),
            ('pairing invariance', pairing),
            ('bi-isotropy', bi_isotropy),
            ('G2 Cartan matrix', cartan),
            ('G2 gradations', g2_gradations),
            ('sl flag gradations', sl_flags),
            ('dimension ladder', ladder),
            ('re-substitution', resubstitution),
            ('generator membership', membership),
            ('equation catalogue', equations),
            ('minor identities', minor_identities),
            ('symplectic maps', symplectic),
            ('tau identities', tau_identities),
            ('classification', classification),
            ('separation', separation),
            ('para-Kaehler round trip', para_kaehler),
        ]


# --- text rendering ------------------------------------------------------------

def render_text(command: str, payload: Dict[str, Any]) -> List[str]:
    """Human-readable lines for a successful payload."""
    lines = []
    if command == 'roots':
        lines.append(f"{payload['algebra']}: simple roots {', '.join(payload['simple_roots'])}")
        lines.append(f"positive roots: {', '.join(payload['positive_roots'])}")
        lines.append(f"gram: {payload['gram']}")
        lines.append(f"cartan: {payload['cartan']}")
        lines.append(f"maximal root d = {payload['maximal_root']}")
        lines.extend(f"{'✓' if ok else '✗'} {name}" for name, ok in payload['checks'].items())
    elif command == 'gradations':
        for table in payload['tables']:
            if 'flag' in table:
                lines.append(f"sl flag {table['flag']}: dimensions {table['dimensions']}, "
                             f"{table['violations']} violations over {table['checked_pairs']} brackets")
                continue
            lines.append(f"pi1 = {{{', '.join(table['pi1'])}}}, depth {table['depth']}")
            for level, roots in table['levels'].items():
                lines.append(f"  R^{level}: {', '.join(roots)}")
            lines.append(f"  dimensions: {table['dimensions']}")
    elif command == 'invariants':
        for space in payload['spaces']:
            lines.append(f"degree {space['degree']}: dimension {space['dimension']}")
            lines.extend(f"  {f['name']} = {f['rendered']}" for f in space['forms'])
    elif command == 'forms':
        for f in payload['generators'] + payload['five_forms']:
            lines.append(f"{f['name']} (H_d weight {f['hdelta_weight']}): {f['rendered']}")
    elif command == 'equations':
        for e in payload['equations']:
            head = e['name'] + (f" [{e['short_name']}]" if e['short_name'] else '')
            body = e['minors'] if payload['format'] == 'minors' and e['minors'] else e['expanded'] or ''
            lines.append(f"{head}: {body} = 0")
            if e.get('note'):
                lines.append(f"  note: {e['note']}")
    elif command == 'classify':
        for partition in payload['partitions']:
            lines.append(f"generators {{{', '.join(partition['generators'])}}}: {len(partition['classes'])} classes")
            for c in partition['classes']:
                lines.append(f"  {c['representative']}: {', '.join(c['members'])}")
        sep = payload['separation']
        lines.append(f"{sep['pair'][0]} vs {sep['pair'][1]}: {sep['verdict']} (ranks {sep['ranks']})")
    elif command == 'symbol':
        lines.append(f"{payload['name']}: {payload['expanded']} = 0")
        if payload.get('matrix') is not None:
            lines.append(f"symbol at point: rank {payload['rank']}")
        elif payload.get('constant'):
            lines.append(f"rank {payload['rank']} (constant)")
        else:
            lines.append(f"ranks {', '.join(str(r) for r in payload['attained'])} over {payload['samples']} points")
    return lines


def exit_code(result: Dict[str, Any]) -> int:
    if result['success']:
        if result['command'] == 'selftest' and not result['payload']['passed']:
            return EXIT_FAILURE
        return EXIT_OK
    return EXIT_USAGE if result.get('kind') in ('usage', 'domain') else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='g2mae', description='Exact G2 Monge-Ampere pipeline')
    parser.add_argument('--json', action='store_true', help='print a JSON envelope instead of text')
    parser.add_argument('--seed', type=int, default=None, help='sampling seed (default from config)')
    parser.add_argument('--config', default='config.json', help='configuration file')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('roots', help='G2 root system, Gram matrix and pairing checks')
    grad = sub.add_parser('gradations', help='fundamental gradations')
    grad.add_argument('algebra', nargs='?', default='g2', choices=RequestValidator.ALGEBRAS)
    grad.add_argument('--pi1', default=None, help='simple roots of degree one, e.g. a2 or a1,a2')
    grad.add_argument('--flag', default=None, help='flag dimensions for sl, e.g. 1,1')
    inv = sub.add_parser('invariants', help='invariant k-forms on m')
    inv.add_argument('--degree', type=int, default=None)
    sub.add_parser('forms', help='generators and the twelve 5-forms')
    eq = sub.add_parser('equations', help='the Monge-Ampere catalogue')
    eq.add_argument('--format', default='expanded', choices=RequestValidator.FORMATS)
    eq.add_argument('--dictionary', default=None, choices=RequestValidator.DICTIONARIES)
    cl = sub.add_parser('classify', help='equivalence classes under tau and xi')
    cl.add_argument('--samples', type=int, default=None)
    sy = sub.add_parser('symbol', help='symbol rank of an equation')
    sy.add_argument('name')
    sy.add_argument('--point', default=None, help='15 rationals in u00,u01,...,u44 order')
    sy.add_argument('--samples', type=int, default=None)
    st = sub.add_parser('selftest', help='run every certificate')
    st.add_argument('--samples', type=int, default=None)
    return parser


def dispatch(orchestrator: PipelineOrchestrator, args: argparse.Namespace, unicode: bool) -> Dict[str, Any]:
    if args.command == 'roots':
        return orchestrator.process_roots()
    if args.command == 'gradations':
        return orchestrator.process_gradations(args.algebra, args.pi1, args.flag)
    if args.command == 'invariants':
        return orchestrator.process_invariants(args.degree, unicode)
    if args.command == 'forms':
        return orchestrator.process_forms(unicode)
    if args.command == 'equations':
        return orchestrator.process_equations(args.format, args.dictionary)
    if args.command == 'classify':
        return orchestrator.process_classify(args.seed, args.samples)
    if args.command == 'symbol':
        return orchestrator.process_symbol(args.name, args.point, args.seed, args.samples)
    return orchestrator.process_selftest(args.seed, args.samples)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the application."""
    args = build_parser().parse_args(argv)
    setup_logging()
    config = load_config(args.config)
    level = str(config.get('log_level', 'INFO')).upper()
    logging.getLogger().setLevel(getattr(logging, level, logging.INFO))
    orchestrator = PipelineOrchestrator(config=config)

    result = dispatch(orchestrator, args, unicode=not args.json)
    code = exit_code(result)

    if args.json:
        if result['success']:
            envelope = OutputEnvelope(command=result['command'], format='json', payload=result['payload'])
            print(dump_json(envelope.model_dump()))
        else:
            print(dump_json(ErrorResponse(**result).model_dump()))
        return code

    if not result['success']:
        print("\n" + "=" * 80)
        print("✗ FAILED!")
        print(f"Error: {result.get('error')}")
        print("=" * 80)
        return code

    if result['command'] == 'selftest':
        print_summary('selftest', result['payload']['checks'])
    else:
        for line in render_text(result['command'], result['payload']):
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
