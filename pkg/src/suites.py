"""
Check suites: sample random inputs from a scenario and record every
identity residual as a pass/fail case
"""
import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import time

from config.logging_config import setup_logging, log_suite_start, log_suite_end, log_error

from src.forms import Form
from src.fn_calculus import (
    FormVector, check_f1, check_f2, check_f3, check_f4, check_f5, check_f6,
    check_insertion_coherence, check_lie_coherence, check_nr_jacobi, check_fn_jacobi,
    check_fn_antisymmetry, check_decomposition,
)
from src.linfty import (
    MorphismFamily, SkewOracle, SymmetricOracle, jacobiator, module_jacobiator, skew_jacobiator,
    morphism_defect, compose_morphisms, is_null,
)
from src import foliation as fol
from src import splitting_change as sc
from src import presymplectic as ps
from src import derived_brackets as db
from src import contraction as ct
from src.sampling import (
    make_rng, random_form, random_abar, random_q_element, random_form_vector,
    random_mixed_form, random_leaf_field, random_degree,
)
from src.reports import SuiteReport, residual_case, expectation_case

logger = setup_logging("lrcheck-suites")

SUITES = ("fn", "foliation", "jacobiator", "morphism", "presymplectic", "splitting", "derived", "transfer")


class SuiteContext:
    """Scenario, random generator and report shared by the checks of one run."""

    def __init__(self, scenario, rng, report, mutation=None):
        self.scenario = scenario
        self.rng = rng
        self.report = report
        self.mutation = mutation

    @property
    def F(self):
        return self.scenario.foliation

    @property
    def splitting(self):
        return self.scenario.splitting

    @property
    def cases(self):
        return self.scenario.cases

    @property
    def max_arity(self):
        return self.scenario.max_arity

    def check(self, case_id, check, *args):
        """Evaluate one residual; a dict of residuals becomes one case per key."""
        try:
            residual = check(*args)
        except Exception as e:
            log_error(logger, case_id, e)
            self.report.add(expectation_case(case_id, False, f"error: {e}"))
            return
        if isinstance(residual, dict):
            for key, value in residual.items():
                self.report.add(residual_case(f"{case_id}/{key}", value))
        else:
            self.report.add(residual_case(case_id, residual))

    def expect(self, case_id, ok, witness):
        self.report.add(expectation_case(case_id, ok, witness))

    # Samplers

    def degree(self, low, high):
        return random_degree(self.rng, low, high)

    def abar(self, low=0, high=1, F=None):
        F = F or self.F
        return random_abar(self.rng, F.splitting, self.degree(low, min(high, F.n)))

    def q(self, low=0, high=1, F=None):
        F = F or self.F
        return random_q_element(self.rng, F, self.degree(low, min(high, F.n)))

    def form(self, degree):
        return random_mixed_form(self.rng, self.splitting, degree)

    def field(self, degree, splitting=None):
        """Form-valued vector field of the given form degree."""
        splitting = splitting or self.splitting
        chart = splitting.chart
        low, high = max(0, degree - chart.n), min(degree, chart.m)
        if low > high:
            return FormVector.zero(splitting)
        r = self.degree(low, high)
        return random_form_vector(self.rng, splitting, r, degree - r)

    def transverse_form(self, r, degree_low=0, degree_high=1):
        """Form with exactly r du-factors in every monomial."""
        s = self.degree(degree_low, min(degree_high, self.F.n))
        return random_form(self.rng, self.splitting, r, s)


# ==========================================
# SUITES
# ==========================================

def fn_suite(ctx):
    """Froelicher-Nijenhuis identities and operator coherence on random samples."""
    for c in range(ctx.cases):
        omega = ctx.form(ctx.degree(0, 1))
        X, Z, Y = (ctx.field(ctx.degree(0, 2)) for _ in range(3))
        a = ctx.form(ctx.degree(0, 2))
        ctx.check(f"f4#{c}", check_f4, omega, Z, a)
        ctx.check(f"f5#{c}", check_f5, Z, Y, a)
        ctx.check(f"f6#{c}", check_f6, omega, Z, Y)
        ctx.check(f"f2#{c}", check_f2, omega, Z, Y)
        ctx.check(f"f3#{c}", check_f3, X, Z, Y)
        ctx.check(f"f1#{c}", check_f1, X, Z, Y)
        ctx.check(f"[i,i]=i_nr#{c}", check_insertion_coherence, Z, Y, a)
        ctx.check(f"[L,L]=L_fn#{c}", check_lie_coherence, Z, Y, a)
        ctx.check(f"nr-jacobi#{c}", check_nr_jacobi, X, Z, Y)
        ctx.check(f"fn-jacobi#{c}", check_fn_jacobi, X, Z, Y)
        ctx.check(f"fn-antisymmetry#{c}", check_fn_antisymmetry, Z, Y)
        ctx.check(f"decomposition#{c}", check_decomposition, ctx.field(Y.degree + 1), Y)


def foliation_suite(ctx):
    """Structure tables, the bidegree decomposition of d and the LR identities."""
    F = ctx.F
    ctx.check("bracket-table", fol.bracket_table_residuals, F)
    forms = [ctx.form(ctx.degree(0, 2)) for _ in range(3)]
    ctx.check("operator-relations", fol.operator_relation_residuals, F, forms)
    ctx.check("differential", fol.differential_residuals, F, forms)
    for c in range(ctx.cases):
        lam, Z = ctx.abar(), ctx.q()
        ctx.check(f"dbar#{c}", fol.dbar_residuals, F, lam, Z)
        X = FormVector.from_vector_field(random_leaf_field(ctx.rng, F.chart), F.splitting)
        ctx.check(f"bott#{c}", fol.bott_residual, F, X, ctx.q(0, 0))
        X1, X2 = random_leaf_field(ctx.rng, F.chart), random_leaf_field(ctx.rng, F.chart)
        ctx.check(f"leafwise-ce#{c}", fol.leafwise_ce_residual, F, ctx.abar(1, 1), X1, X2)
        Z1, Z2 = ctx.q(), ctx.q()
        ctx.check(f"alt-binary#{c}", fol.alt_binary_residuals, F, Z1, Z2, Z, lam)
        zs = [ctx.q() for _ in range(3)]
        ctx.check(f"closure#{c}", fol.closure_residuals, F, zs, lam)
        a = ctx.abar()
        for k in range(1, 4):
            ctx.check(f"lrp/{k}#{c}", fol.lrp_residual, F, zs[:k], a)
        for k in range(0, 3):
            ctx.check(f"anchor-derivation/{k}#{c}", fol.anchor_derivation_residual, F, zs[:k], lam, ctx.abar())
        for k in range(1, 3):
            ctx.check(f"anchor-linearity/{k}#{c}", fol.anchor_linearity_residual, F, a, zs[:k], lam)
        for r in range(0, min(2, F.m) + 1):
            omega = ctx.transverse_form(r)
            for k in range(0, 3):
                qs = [ctx.q() for _ in range(r + k)]
                ctx.check(f"ce/r{r}k{k}#{c}", fol.ce_residual, F, omega, k, qs)


def jacobiator_suite(ctx):
    """Jacobiators and module Jacobiators of the foliation brackets."""
    oracle = fol.FoliationOracle(ctx.F, mutation=ctx.mutation)
    for k in range(1, ctx.max_arity + 1):
        for c in range(ctx.cases):
            zs = [ctx.q() for _ in range(k)]
            ctx.check(f"J{k}#{c}", jacobiator, oracle, *zs)
            ctx.check(f"module-J{k}#{c}", module_jacobiator, oracle, *zs[:k - 1], ctx.abar())
            if k <= 3:
                ctx.check(f"skew-J{k}#{c}", skew_jacobiator, SkewOracle(oracle), *zs)


def _decalage_round_trip(oracle, *args):
    back = SymmetricOracle(SkewOracle(oracle))
    value, expected = back.bracket(*args), oracle.bracket(*args)
    if is_null(value):
        return expected
    return value - expected if not is_null(expected) else value


def morphism_suite(ctx):
    """Identity morphisms, composition and the decalage dictionary."""
    F = ctx.F
    oracle = fol.FoliationOracle(F)
    identity = MorphismFamily.identity()
    twice = compose_morphisms(identity, identity, degree=fol.shifted_degree)
    for k in range(1, min(ctx.max_arity, 4) + 1):
        for c in range(ctx.cases):
            zs = [ctx.q() for _ in range(k)]
            ctx.check(f"identity-K{k}#{c}", morphism_defect, identity, oracle, oracle, *zs)
            ctx.check(f"id-o-id-K{k}#{c}", morphism_defect, twice, oracle, oracle, *zs)
            if k <= 3:
                ctx.check(f"decalage/{k}#{c}", _decalage_round_trip, oracle, *zs)
    if not F.is_flat():
        # identity into the curvature-mutated brackets must fail on the frame
        V1, V2 = F.frame_vector(0), F.frame_vector(F.m - 1)
        mutated = fol.FoliationOracle(F, mutation="binary-curvature-sign")
        defect = morphism_defect(identity, oracle, mutated, V1, V2)
        ctx.expect("identity-into-mutated/nonzero", not is_null(defect), "defect vanished on the frame")


def presymplectic_suite(ctx):
    """Homotopy Poisson brackets of a presymplectic form and the Hamiltonian tower."""
    F = ctx.F
    data = ps.validate_presymplectic(F, ctx.scenario.omega_form())
    ctx.check("presymplectic-data", ps.presymplectic_residuals, data)
    op_oracle = ps.OpOracle(data)
    for c in range(ctx.cases):
        w = ctx.transverse_form(1)
        ctx.check(f"sharp-flat#{c}", ps.sharp_flat_residuals, data, w, ctx.q())
        f = ctx.abar(0, 0)
        for k in range(1, min(ctx.max_arity, 5) + 1):
            lams = [ctx.abar() for _ in range(k)]
            ctx.check(f"op-J{k}#{c}", jacobiator, op_oracle, *lams)
            if k <= 3:
                ctx.check(f"hamiltonian-action/{k}#{c}", ps.hamiltonian_action_residual, data, lams, f)
                ctx.check(f"K_X/{k}#{c}", ps.kx_defect, data, lams)
        if F.n >= 1:
            lam = ctx.abar(1, 1)
            for k in range(1, 4):
                ctx.check(f"lemma22/{k}#{c}", ps.lemma22_residual, data, lam, k, ctx.abar())
        if F.is_flat():
            ctx.check(f"strict-jacobi#{c}", ps.strict_jacobi_residual, data, ctx.abar(), ctx.abar(), ctx.abar())


def splitting_suite(ctx):
    """Change of complementary distribution: closed forms, recursion and morphism defects."""
    F, F_prime = ctx.F, ctx.scenario.alt_foliation
    pair = sc.SplittingPair(F, F_prime)
    ctx.check("delta", sc.delta_residual, pair)
    ctx.expect("delta-vertical", sc.delta_is_vertical(pair), f"delta = {pair.delta.pretty()}")
    for c in range(ctx.cases):
        lam = ctx.abar()
        omega = ctx.transverse_form(1) if F.m else Form.zero(F.splitting)
        for k in range(0, 4):
            ctx.check(f"psi/{k}#{c}", sc.psi_residuals, pair, k, lam, omega)
        for k in range(1, 4):
            qs = [ctx.q(F=F_prime) for _ in range(k)]
            ctx.check(f"phi-closed/{k}#{c}", sc.phi_residual, pair, qs, lam)
            ctx.check(f"recursion-linearity/{k}#{c}", sc.recursion_linearity_residual, pair, ctx.abar(), omega, qs)
        for k in range(1, 5):
            qs = [ctx.q(F=F_prime) for _ in range(k)]
            ctx.check(f"Phi-closed/{k}#{c}", sc.Phi_residual, pair, qs)
        even = ctx.q(1, 1, F=F_prime)
        for k in range(2, 4):
            ctx.check(f"Phi-equal-arguments/{k}#{c}",
                      lambda Z, k: sc.Phi(pair, [Z] * k) - sc.Phi_equal_arguments(pair, Z, k), even, k)
        for r in range(1, min(2, F.m) + 1):
            omega_r = ctx.transverse_form(r)
            qs = [ctx.q(F=F_prime) for _ in range(r + ctx.degree(0, 1))]
            ctx.check(f"psi-expansion/r{r}#{c}", sc.psi_expansion_residual, pair, omega_r, qs)
        for k in range(1, min(ctx.max_arity, 3) + 1):
            qs = [ctx.q(F=F_prime) for _ in range(k)]
            ctx.check(f"K_Phi/{k}#{c}", sc.Phi_defect, pair, qs)
            ctx.check(f"anchored/{k}#{c}", sc.anchored_defect, pair, qs, ctx.abar())
            if k <= 2:
                ctx.check(f"composite/{k}#{c}", sc.composite_residual, pair, qs)


def _random_operator(ctx, degree):
    s = ctx.splitting
    return db.FirstOrderOperator(s, degree, Z=ctx.field(degree + 1), Y=ctx.field(degree), scalar=ctx.form(degree))


def derived_suite(ctx):
    """Derived brackets of the exterior differential against the foliation brackets."""
    F = ctx.F
    for c in range(ctx.cases):
        q1, q2, a = ctx.q(), ctx.q(), ctx.abar()
        ctx.check(f"vdata#{c}", db.vdata_residuals, F, q1, q2, a)
        op1, op2 = _random_operator(ctx, ctx.degree(0, 1)), _random_operator(ctx, ctx.degree(0, 1))
        ctx.check(f"operator-commutator#{c}", db.operator_commutator_residual, op1, op2, ctx.form(ctx.degree(0, 2)))
        ctx.check(f"kernel-closure#{c}", db.kernel_closure_residual, F, op1, op2)
        for k in range(1, 5):
            qs = [ctx.q() for _ in range(k)]
            ctx.check(f"derived/{k}#{c}", db.equivalence_residual, F, *qs)
            slot = ctx.degree(0, k - 1)
            mixed = qs[:slot] + [ctx.abar()] + qs[slot + 1:]
            ctx.check(f"derived-anchor/{k}#{c}", db.equivalence_residual, F, *mixed)
            if k >= 2:
                two_forms = [ctx.abar(), ctx.abar()] + qs[:k - 2]
                ctx.check(f"derived-two-forms/{k}#{c}", db.derived_bracket, F, *two_forms)


def _random_derivation(ctx, degree):
    F = ctx.F
    on_coords = [random_abar(ctx.rng, F.splitting, degree) if degree <= F.n else None
                 for _ in F.chart.coords]
    on_theta = [random_abar(ctx.rng, F.splitting, degree + 1) if degree + 1 <= F.n else None
                for _ in range(F.n)]
    return ct.LBarDerivation(F.splitting, degree, on_coords, on_theta)


def transfer_suite(ctx):
    """Contraction onto Lambda-bar (x) X-bar and the transferred binary bracket."""
    F = ctx.F
    for c in range(ctx.cases):
        D = _random_derivation(ctx, ctx.degree(0, 1))
        ctx.check(f"contraction#{c}", ct.contraction_residuals, F, ctx.q(), D)
        ctx.check(f"transferred-binary(sign=+1)#{c}", ct.transferred_bracket_residual, F, ctx.q(), ctx.q())


SUITE_RUNNERS = {
    "fn": fn_suite,
    "foliation": foliation_suite,
    "jacobiator": jacobiator_suite,
    "morphism": morphism_suite,
    "presymplectic": presymplectic_suite,
    "splitting": splitting_suite,
    "derived": derived_suite,
    "transfer": transfer_suite,
}


def missing_prerequisite(scenario, suite):
    """Name of the scenario field a suite needs but lacks, or None."""
    if suite == "presymplectic" and scenario.omega is None:
        return "OMEGA"
    if suite == "splitting" and scenario.alt_splitting is None:
        return "ALT_SPLITTING"
    return None


def run_suite(scenario, suite, mutation=None):
    """Run one suite (or all of them) and return its report."""
    if suite != "all" and suite not in SUITE_RUNNERS:
        raise ValueError(f"Unknown suite '{suite}' (expected one of {', '.join(SUITES + ('all',))})")
    if mutation is not None and mutation not in fol.MUTATIONS:
        raise ValueError(f"Unknown mutation '{mutation}', expected one of {fol.MUTATIONS}")
    if suite != "all":
        missing = missing_prerequisite(scenario, suite)
        if missing:
            raise ValueError(f"Suite '{suite}' needs {missing} in the scenario")

    log_suite_start(logger, suite, scenario.name)
    started = time.perf_counter()
    report = SuiteReport(suite, scenario.seed)
    ctx = SuiteContext(scenario, make_rng(scenario.seed), report, mutation)

    names = SUITES if suite == "all" else (suite,)
    for name in names:
        missing = missing_prerequisite(scenario, name)
        if missing:
            logger.warning(f"⚠️ Skipping {name} suite: scenario has no {missing}")
            continue
        if suite == "all":
            part = SuiteReport(name, scenario.seed)
            ctx.report = part
            SUITE_RUNNERS[name](ctx)
            report.extend(part, prefix=name)
            logger.info(f"📋 {name}: {len(part.cases) - len(part.failures)}/{len(part.cases)} cases passed")
        else:
            SUITE_RUNNERS[name](ctx)

    report.elapsed_ms = int((time.perf_counter() - started) * 1000)
    for case in report.failures[:5]:
        logger.warning(f"⚠️ {case.id}: {case.witness}")
    log_suite_end(logger, suite, report.stats())
    return report
