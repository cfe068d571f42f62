"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) and
then asserts every sub-check at the criterion's tolerance.
"""

import io
import random
import xml.etree.ElementTree as ET

import pytest

from approval_seats import Group, filter_by_approval, reference_dataset, summarize
from approval_seats.cli import run
from approval_seats.dataset import RECORDED_2014_SEAT_CHANGE
from approval_seats.inference import (
    mean_response_interval,
    prediction_interval,
    seats_interval,
    slope_utility_test,
)
from approval_seats.regress import fit_ols, predict_point, residuals
from approval_seats.report import render_scatter_svg
from approval_seats.specfun import reg_inc_beta, t_cdf, t_quantile

from oracles import normal_equations, rel_close, t_cdf_quadrature


def _record(log, number, title, checks):
    failed = [(label, detail) for label, ok, detail in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if failed:
        line += " -- " + "; ".join(f"{label}: {detail}" for label, detail in failed)
    log.append(line)
    assert not failed, line


def _near(label, got, want, tol):
    return (label, abs(got - want) <= tol, f"got {got!r}, want {want} ± {tol}")


def _model_checks(group, a, b, r2, df, t, p):
    ds = filter_by_approval(reference_dataset(), group)
    fit = fit_ols(ds.pairs())
    test = slope_utility_test(fit)
    return fit, test, [
        _near("a", fit.a, a, 1e-3),
        _near("b", fit.b, b, 1e-4),
        _near("r^2", fit.r2, r2, 1e-5),
        ("df", fit.df == df, f"got {fit.df}, want {df}"),
        _near("t", test.t_stat, t, 1e-4),
        _near("p", test.p_two_sided, p, 1e-5),
    ]


def test_criterion_1_full_data_model(acceptance_log):
    _, _, checks = _model_checks(Group.ALL, -107.423, 1.59428, 0.517208, 15, 4.00865, 0.001139)
    _record(acceptance_log, 1, "full-data model", checks)


def test_criterion_2_above_50_model(acceptance_log):
    _, _, checks = _model_checks(Group.ABOVE_50, -275.461, 4.37551, 0.697168, 7, 4.01437, 0.005096)
    _record(acceptance_log, 2, "above-50 model", checks)


def test_criterion_3_below_50_model(acceptance_log):
    _, test, checks = _model_checks(Group.BELOW_50, -69.1739, 0.7065, 0.042269, 6, 0.512416, 0.625485)
    checks.append(("verdict", not test.reject_at_005, "expected 'not useful'"))
    _record(acceptance_log, 3, "below-50 model", checks)


def test_criterion_4_summary_statistics(acceptance_log):
    ref = reference_dataset()
    expected = {
        Group.ALL: ((51.58823529, 10.25340689), (-25.17647059, 22.73003325)),
        Group.ABOVE_50: ((60.11111111, 3.689323937), (-12.44444444, 19.33333333)),
        Group.BELOW_50: ((42.0, 5.126959556), (-39.5, 17.63114128)),
    }
    checks = []
    for g, ((am, asd), (sm, ssd)) in expected.items():
        ds = filter_by_approval(ref, g)
        ap, se = summarize(ds.approvals()), summarize(ds.seat_changes())
        checks += [
            _near(f"{g.value} approval mean", ap.mean, am, 1e-6),
            _near(f"{g.value} approval sd", ap.sd, asd, 1e-6),
            _near(f"{g.value} seats mean", se.mean, sm, 1e-6),
            _near(f"{g.value} seats sd", se.sd, ssd, 1e-6),
        ]
    _record(acceptance_log, 4, "summary statistics", checks)


def test_criterion_5_forecast(acceptance_log):
    fit = fit_ols(reference_dataset().pairs())
    iv = mean_response_interval(fit, 44, 0.95)
    seats = seats_interval(iv)
    checks = [
        _near("center", iv.center, -37.27, 0.01),
        _near("margin", iv.margin, 10.61, 0.01),
        _near("lower", iv.lower, -47.88, 0.01),
        _near("upper", iv.upper, -26.67, 0.01),
        ("seats", seats == (-48, -27), f"got {seats}"),
        ("2014 outcome inside", seats[0] <= RECORDED_2014_SEAT_CHANGE <= seats[1], f"{seats}"),
    ]
    _record(acceptance_log, 5, "forecast at 44% approval", checks)


def test_criterion_6_special_function_oracle(acceptance_log):
    rng = random.Random(20141104)
    worst_cdf = worst_rt = 0.0
    for _ in range(200):
        df = rng.randint(1, 50)
        t = rng.uniform(-8.0, 8.0)
        worst_cdf = max(worst_cdf, abs(t_cdf(t, df) - t_cdf_quadrature(t, df)))
        p = t_cdf(t, df)
        worst_rt = max(worst_rt, abs(t_cdf(t_quantile(p, df), df) - p))
    checks = [
        ("t_cdf vs quadrature", worst_cdf <= 1e-8, f"max error {worst_cdf:.3g}"),
        ("quantile round trip", worst_rt <= 1e-8, f"max error {worst_rt:.3g}"),
    ]
    _record(acceptance_log, 6, "special functions vs quadrature oracle", checks)


def test_criterion_7_ols_oracle(acceptance_log):
    rng = random.Random(1946)
    bad = []
    done = 0
    while done < 500:
        n = rng.randint(3, 40)
        xs = [rng.randint(20, 80) for _ in range(n)]
        if len(set(xs)) < 2:
            continue
        pts = [(x, rng.uniform(-100.0, 100.0)) for x in xs]
        fit, oracle = fit_ols(pts), normal_equations(pts)
        for key in ("a", "b", "r2", "s"):
            if not rel_close(getattr(fit, key), oracle[key], 1e-9):
                bad.append(f"{key} {getattr(fit, key)!r} vs {oracle[key]!r}")
        done += 1
    _record(acceptance_log, 7, "OLS vs exact normal equations (500 datasets)",
            [("agreement", not bad, "; ".join(bad[:3]))])


def test_criterion_8_property_suite(acceptance_log):
    rng = random.Random(2010)
    fails: dict[str, int] = {}

    def check(name, ok):
        if not ok:
            fails[name] = fails.get(name, 0) + 1

    for _ in range(300):
        n = rng.randint(4, 30)
        xs = [rng.uniform(20, 80) for _ in range(n)]
        pts = [(x, rng.uniform(-2, 2) * x + rng.gauss(0, 15)) for x in xs]
        f = fit_ols(pts)
        ymax = max(abs(y) for _, y in pts)
        check("residual sum", abs(sum(residuals(f, pts))) <= 1e-9 * n * ymax)
        check("centroid", abs(predict_point(f, f.x_mean) - f.y_mean) <= 1e-9)

        c = rng.uniform(-500, 500)
        g = fit_ols([(x, y + c) for x, y in pts])
        check("shift a", abs(g.a - (f.a + c)) <= 1e-9 * (abs(f.a) + abs(c) + 1))
        check("shift b/r2/s", abs(g.b - f.b) <= 1e-9 * (abs(f.b) + 1)
              and abs(g.r2 - f.r2) <= 1e-9 and abs(g.s - f.s) <= 1e-9 * f.s)

        k = rng.choice([-3.0, -0.5, 0.1, 2.0, 7.5])
        h = fit_ols([(k * x, y) for x, y in pts])
        check("scale", rel_close(h.b, f.b / k, 1e-9) and abs(h.r2 - f.r2) <= 1e-9
              and rel_close(h.s, f.s, 1e-9))

        d, dd = rng.uniform(0, 30), rng.uniform(0.01, 10)
        lv = rng.uniform(0.5, 0.95)
        m = lambda x0, lev=lv: mean_response_interval(f, x0, lev).margin  # noqa: E731
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            check("margin vs distance", m(f.x_mean + d + dd) > m(f.x_mean + d))
            check("margin symmetric", abs(m(f.x_mean + d) - m(f.x_mean - d)) <= 1e-12 * m(f.x_mean + d))
            check("margin vs level", m(f.x_mean + d, lv + 0.04) > m(f.x_mean + d))
            x0 = rng.uniform(0, 100)
            check("prediction wider", prediction_interval(f, x0, lv).margin
                  > mean_response_interval(f, x0, lv).margin)

        a, b = rng.uniform(0.1, 50), rng.uniform(0.1, 50)
        x = 1.0 - (1.0 - rng.random())
        check("beta symmetry", abs(reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1 - x) - 1) <= 1e-10)

    _record(acceptance_log, 8, "property suite (300 randomized cases)",
            [(name, False, f"{count} violations") for name, count in fails.items()])


def test_criterion_9_end_to_end(acceptance_log):
    outs = []
    for _ in range(2):
        out, err = io.StringIO(), io.StringIO()
        code = run(["report", "--input", "builtin"], stdout=out, stderr=err)
        outs.append((code, out.getvalue()))
    (code1, md1), (code2, md2) = outs

    ref = reference_dataset()
    needed = []
    for g in Group:
        ds = filter_by_approval(ref, g)
        fit = fit_ols(ds.pairs())
        test = slope_utility_test(fit)
        needed += [f"{v:.6g}" for v in (fit.a, fit.b, fit.r2, test.t_stat, test.p_two_sided)]
        needed.append(f"| {fit.df} |")
        for s in (summarize(ds.approvals()), summarize(ds.seat_changes())):
            needed += [f"{s.mean:.10g}", f"{s.sd:.10g}"]
    iv = mean_response_interval(fit_ols(ref.pairs()), 44, 0.95)
    needed += [f"{iv.center:.6g}", f"{iv.margin:.6g}", f"{iv.lower:.6g}", f"{iv.upper:.6g}",
               "[-48, -27]", "lose 27 to 48"]
    missing = [s for s in needed if s not in md1]

    svg = render_scatter_svg(ref, fit_ols(ref.pairs()))
    try:
        root = ET.fromstring(svg)
        n_points = len(root.findall("{http://www.w3.org/2000/svg}circle"))
        well_formed = True
    except ET.ParseError:
        n_points, well_formed = 0, False

    checks = [
        ("exit codes", code1 == code2 == 0, f"{code1}, {code2}"),
        ("byte-identical", md1 == md2, "outputs differ"),
        ("report values", not missing, f"missing {missing}"),
        ("svg well-formed", well_formed, "parse error"),
        ("svg points", n_points == 17, f"{n_points} points"),
    ]
    _record(acceptance_log, 9, "report golden run and scatter SVG", checks)
