#include "openup/open_up.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "openup/errors.hpp"
#include "sampling.hpp"

namespace openup {

Arc Arc::create(std::vector<Complex> samples) {
    if (samples.size() < 2) throw DegenerateSpec("arc needs at least two samples");
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (samples[i] == samples[i + 1]) throw DegenerateSpec("arc has coincident consecutive samples");
    if (!polyline_simple(samples, false)) throw DegenerateSpec("arc polyline is self-intersecting");
    Arc arc;
    arc.samples = std::move(samples);
    return arc;
}

ArcSet ArcSet::create(std::vector<Arc> arcs) {
    if (arcs.empty()) throw DegenerateSpec("arc set must contain at least one arc");
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j)
            if (polyline_min_distance(arcs[i].samples, arcs[j].samples) <= 1e-12)
                throw DegenerateSpec("arcs must be pairwise disjoint");
    std::vector<Complex> eps;
    for (const Arc& a : arcs) {
        eps.push_back(a.first_endpoint());
        eps.push_back(a.last_endpoint());
    }
    for (std::size_t i = 0; i < eps.size(); ++i)
        for (std::size_t j = i + 1; j < eps.size(); ++j)
            if (std::abs(eps[i] - eps[j]) <= 1e-8) throw DegenerateSpec("arc endpoints must be pairwise distinct");
    ArcSet set;
    set.arcs = std::move(arcs);
    return set;
}

std::vector<Complex> ArcSet::endpoints() const {
    std::vector<Complex> eps;
    eps.reserve(arcs.size() * 2);
    for (const Arc& a : arcs) {
        eps.push_back(a.first_endpoint());
        eps.push_back(a.last_endpoint());
    }
    return eps;
}

RootSet fiber(const RationalMap& map, Complex w, double cluster_radius) {
    return roots(map.P - Complex(w) * map.Q, cluster_radius);
}

EndpointFiberReport verify_endpoint_fibers(const RationalMap& map, std::span<const Complex> endpoints) {
    EndpointFiberReport report;
    report.pass = true;
    for (const Complex& zeta : endpoints) {
        EndpointFiberReport::PerEndpoint entry;
        entry.value = zeta;
        try {
            const RootSet fib = fiber(map, zeta);
            entry.distinct_points = static_cast<int>(fib.roots.size());
            int doubles = 0, others_simple = 0;
            for (const auto& r : fib.roots) {
                if (r.multiplicity == 2)
                    ++doubles;
                else if (r.multiplicity == 1)
                    ++others_simple;
            }
            entry.double_points = doubles;
            entry.pass = entry.distinct_points == map.n && doubles == 1 &&
                         others_simple == entry.distinct_points - 1;
        } catch (const RootFindingError&) {
            entry.pass = false;
        }
        report.pass = report.pass && entry.pass;
        report.endpoints.push_back(entry);
    }
    return report;
}

namespace {

// Chord-length parametrization of the arc polyline.
struct ArcParam {
    std::vector<Complex> samples;
    std::vector<double> s;  // cumulative parameter in [0, 1] at each sample

    explicit ArcParam(const Arc& arc) : samples(arc.samples) {
        s.resize(samples.size(), 0.0);
        for (std::size_t i = 1; i < samples.size(); ++i)
            s[i] = s[i - 1] + std::abs(samples[i] - samples[i - 1]);
        const double total = s.back();
        for (double& v : s) v /= total;
    }

    Complex at(double t) const {
        if (t <= 0.0) return samples.front();
        if (t >= 1.0) return samples.back();
        const auto it = std::upper_bound(s.begin(), s.end(), t);
        const std::size_t hi = static_cast<std::size_t>(it - s.begin());
        const std::size_t lo = hi - 1;
        const double span = s[hi] - s[lo];
        const double u = span > 0.0 ? (t - s[lo]) / span : 0.0;
        return samples[lo] + u * (samples[hi] - samples[lo]);
    }
};

std::optional<Complex> correct_onto_fiber(const RationalMap& map, Complex w, Complex z,
                                          const TraceOptions& opt) {
    const Polynomial g = map.P - w * map.Q;
    const Polynomial gd = g.derivative();
    for (int it = 0; it < opt.max_corrector_iters; ++it) {
        const Complex gv = g(z);
        const Complex dv = gd(z);
        if (dv == Complex(0.0)) return std::nullopt;
        const Complex dz = gv / dv;
        z -= dz;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
        if (std::abs(dz) <= 1e-14 * (1.0 + std::abs(z))) return z;
    }
    return std::nullopt;
}

Complex double_point_of(const RootSet& fib, const char* which) {
    std::optional<Complex> dp;
    for (const auto& r : fib.roots)
        if (r.multiplicity == 2) {
            if (dp) throw BranchJump(std::string("endpoint fiber has several double points (") + which + ")");
            dp = r.location;
        } else if (r.multiplicity > 2) {
            throw BranchJump(std::string("endpoint fiber has a point of multiplicity > 2 (") + which + ")");
        }
    if (!dp) throw BranchJump(std::string("endpoint fiber has no double point (") + which + ")");
    return *dp;
}

}  // namespace

BoundaryCurve trace_boundary(const RationalMap& map, const Arc& arc, const TraceOptions& opt) {
    const Complex A = arc.first_endpoint();
    const Complex B = arc.last_endpoint();
    RootSet fibA, fibB;
    try {
        fibA = fiber(map, A);
        fibB = fiber(map, B);
    } catch (const RootFindingError&) {
        throw BranchJump("endpoint fiber computation failed");
    }
    const Complex zA = double_point_of(fibA, "start");
    const Complex zB = double_point_of(fibB, "end");

    // Tube parameter from the fiber geometry at the starting endpoint; with a
    // single fiber point (n = 1) fall back to the union of both endpoint fibers.
    double min_dist = fibA.min_pairwise_distance();
    if (fibA.roots.size() < 2) {
        std::vector<Complex> all = fibA.locations();
        for (const auto& r : fibB.roots) all.push_back(r.location);
        min_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                min_dist = std::min(min_dist, std::abs(all[i] - all[j]));
    }
    if (!std::isfinite(min_dist) || min_dist <= 0.0) throw BranchJump("degenerate fiber geometry at the endpoints");
    const double tube = opt.tube_factor * min_dist;

    const ArcParam param(arc);
    const Polynomial W = map.wronskian();
    const Complex curvature = W.derivative()(zA) / (map.Q(zA) * map.Q(zA));  // F''(zA)
    if (curvature == Complex(0.0)) throw BranchJump("vanishing second derivative at the start double point");

    struct Sample {
        Complex z;
        double s;
    };

    // March one branch across [0, 1]; sign picks the square-root sheet at zA.
    auto walk = [&](double sign) {
        std::vector<Sample> out;
        double s_cur = 0.0;
        Complex z_cur = zA;

        // advance() recurses by halving the arc step until the corrector stays
        // inside the tube; depth counts the halvings.
        auto advance = [&](auto&& self, double s_target, int depth) -> void {
            const Complex w = param.at(s_target);
            if (s_target >= 1.0) {
                if (std::abs(zB - z_cur) <= tube || depth >= opt.refine_cap) {
                    if (std::abs(zB - z_cur) > tube)
                        throw BranchJump("approach to the far double point exceeds the tube after refinement");
                    out.push_back({zB, 1.0});
                    z_cur = zB;
                    s_cur = 1.0;
                    return;
                }
                const double mid = 0.5 * (s_cur + s_target);
                self(self, mid, depth + 1);
                self(self, s_target, depth + 1);
                return;
            }

            Complex z_pred;
            if (s_cur == 0.0) {
                // Square-root expansion off the double point.
                z_pred = zA + double(sign) * std::sqrt(2.0 * (w - A) / curvature);
            } else {
                z_pred = z_cur;
            }
            const auto z_new = correct_onto_fiber(map, w, z_pred, opt);
            if (z_new && std::abs(*z_new - z_pred) <= tube) {
                out.push_back({*z_new, s_target});
                z_cur = *z_new;
                s_cur = s_target;
                return;
            }
            if (depth >= opt.refine_cap)
                throw BranchJump("corrector left the tube at arc parameter " + std::to_string(s_target));
            const double mid = 0.5 * (s_cur + s_target);
            self(self, mid, depth + 1);
            self(self, s_target, depth + 1);
        };

        for (std::size_t i = 1; i < param.s.size(); ++i) advance(advance, param.s[i], 0);
        return out;
    };

    const std::vector<Sample> plus = walk(+1.0);
    const std::vector<Sample> minus = walk(-1.0);
    if (plus.empty() || minus.empty()) throw BranchJump("empty branch trace");
    if (std::abs(plus.front().z - minus.front().z) <= 1e-10 * (1.0 + std::abs(zA)))
        throw BranchJump("the two branches merged at the first step");

    BoundaryCurve curve;
    curve.points.push_back(zA);
    curve.params.push_back(0.0);
    for (const Sample& smp : plus) {
        curve.points.push_back(smp.z);
        curve.params.push_back(smp.s);
    }
    // minus branch walks 0 -> 1 too; append it reversed (skipping its copy of
    // zB) so the polyline closes back toward zA.
    for (auto it = minus.rbegin() + 1; it != minus.rend(); ++it) {
        curve.points.push_back(it->z);
        curve.params.push_back(it->s);
    }
    return curve;
}

OpenUpReport verify_open_up(const RationalMap& map, const ArcSet& arcs,
                            std::span<const BoundaryCurve> curves, int probe_count) {
    OpenUpReport report;
    report.endpoint_fibers = verify_endpoint_fibers(map, arcs.endpoints());

    bool simple = true;
    for (const BoundaryCurve& c : curves) simple = simple && polyline_simple(c.points, true);
    bool disjoint = true;
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j)
            disjoint = disjoint &&
                       polyline_min_distance(curves[i].points, curves[j].points, true, true) > 1e-12;
    report.curves_simple_disjoint = simple && disjoint;

    // Probe points off the arcs, from a fixed quasi-random sequence.
    Box box;
    for (const Arc& a : arcs.arcs) box.expand(bounding_box(a.samples));
    const Box probe_box = box.inflated(std::max(1.0, 0.75 * box.diameter()));
    constexpr double arc_tube = 1e-3;

    report.probe_count = probe_count;
    int accepted = 0;
    for (unsigned idx = 1; accepted < probe_count && idx < 400u * static_cast<unsigned>(probe_count); ++idx) {
        const Complex w(probe_box.xmin + halton(idx, 2) * probe_box.width(),
                        probe_box.ymin + halton(idx, 3) * probe_box.height());
        bool near_arc = false;
        for (const Arc& a : arcs.arcs) near_arc = near_arc || point_polyline_distance(w, a.samples) <= arc_tube;
        if (near_arc) continue;
        ++accepted;

        int exterior = 0;
        try {
            const RootSet fib = fiber(map, w);
            for (const auto& r : fib.roots) {
                bool inside_any = false;
                for (const BoundaryCurve& c : curves)
                    inside_any = inside_any || point_in_closed_curve(r.location, c.points);
                if (!inside_any) exterior += r.multiplicity;
            }
        } catch (const RootFindingError&) {
            exterior = -1;
        }
        if (exterior != 1) ++report.probe_failures;
    }
    report.exterior_single_valued = accepted == probe_count && report.probe_failures == 0;

    report.infinity_fixed = map.P.degree() == map.n + 1 && map.Q.degree() == map.n;
    return report;
}

OpenUpResult open_up(const ArcSet& arcs, const SolverConfig& config) {
    const CriticalValueSpec spec = CriticalValueSpec::create(arcs.endpoints());
    const std::vector<CritvalSolution> candidates = solve_critical_values(spec, config);

    OpenUpResult result;
    std::optional<std::size_t> selected;
    for (const CritvalSolution& cand : candidates) {
        OpenUpResult::Candidate record;
        record.map = cand.map;
        record.residual = cand.residual;
        if (!selected) {
            try {
                std::vector<BoundaryCurve> curves;
                curves.reserve(arcs.arcs.size());
                for (const Arc& arc : arcs.arcs) curves.push_back(trace_boundary(cand.map, arc));
                const OpenUpReport report = verify_open_up(cand.map, arcs, curves);
                if (report.pass()) {
                    record.selected = true;
                    result.map = cand.map;
                    result.nodes = cand.nodes;
                    result.boundary_curves = std::move(curves);
                    result.report = report;
                    for (int i = 0; i < arcs.n(); ++i) result.correspondence.push_back(i);
                    selected = result.candidates.size();
                } else {
                    record.failure = "verification failed";
                    if (!report.endpoint_fibers.pass) record.failure = "endpoint fiber structure";
                    else if (!report.curves_simple_disjoint) record.failure = "traced curves not simple/disjoint";
                    else if (!report.exterior_single_valued) record.failure = "exterior single-valuedness";
                }
            } catch (const BranchJump& e) {
                record.failure = e.what();
            }
        } else {
            record.failure = "not evaluated (earlier candidate selected)";
        }
        result.candidates.push_back(std::move(record));
    }
    if (!selected) {
        std::string detail = "open_up: no candidate passed verification;";
        for (const auto& cand : result.candidates) detail += " [" + cand.failure + "]";
        throw NoOpeningSolution(detail);
    }
    return result;
}

bool exterior_injectivity_check(const RationalMap& map, std::span<const BoundaryCurve> curves,
                                int pairs, std::uint64_t seed) {
    Box box;
    for (const BoundaryCurve& c : curves) box.expand(bounding_box(c.points));
    const Box sample_box = box.inflated(std::max(1.0, 0.5 * box.diameter()));

    auto rng = detail::make_engine(seed, 0x705e5u);
    std::uniform_real_distribution<double> ux(sample_box.xmin, sample_box.xmax);
    std::uniform_real_distribution<double> uy(sample_box.ymin, sample_box.ymax);

    auto exterior_point = [&]() -> Complex {
        for (int tries = 0; tries < 10000; ++tries) {
            const Complex z(ux(rng), uy(rng));
            bool bad = false;
            for (const BoundaryCurve& c : curves)
                bad = bad || point_in_closed_curve(z, c.points) ||
                      point_polyline_distance(z, c.points, true) <= 1e-3;
            if (!bad) return z;
        }
        return Complex(sample_box.xmax + 1.0, sample_box.ymax + 1.0);
    };

    for (int i = 0; i < pairs; ++i) {
        const Complex z1 = exterior_point();
        const Complex z2 = exterior_point();
        if (std::abs(z1 - z2) < 1e-9) continue;
        const Complex w1 = map(z1);
        const Complex w2 = map(z2);
        if (std::abs(w1 - w2) <= 1e-12 * (1.0 + std::abs(w1) + std::abs(w2))) return false;
    }
    return true;
}

double curve_image_distance(const RationalMap& map, const BoundaryCurve& curve, const Arc& arc) {
    double dist = 0.0;
    for (const Complex& z : curve.points)
        dist = std::max(dist, point_polyline_distance(map(z), arc.samples));
    return dist;
}

}  // namespace openup
