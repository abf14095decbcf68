#include "uhvga/metrics.hpp"

#include "uhvga/errors.hpp"
#include "uhvga/problems.hpp"
#include "uhvga/wfg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

namespace uhvga {

std::string_view to_string(FrontSource source)
{
    switch (source) {
    case FrontSource::analytic:
        return "analytic";
    case FrontSource::sampled:
        return "sampled";
    case FrontSource::external_file:
        return "external-file";
    }
    return "unknown";
}

namespace {

std::vector<ObjectivePoint> nondominated_sorted(std::vector<ObjectivePoint> points)
{
    std::sort(points.begin(), points.end(),
              [](const ObjectivePoint& a, const ObjectivePoint& b) { return a.f0 < b.f0 || (a.f0 == b.f0 && a.f1 < b.f1); });
    std::vector<ObjectivePoint> out;
    double best_f1 = std::numeric_limits<double>::infinity();
    for (const ObjectivePoint& y : points) {
        if (y.f1 < best_f1) {
            out.push_back(y);
            best_f1 = y.f1;
        }
    }
    return out;
}

} // namespace

ReferenceFront::ReferenceFront(std::vector<ObjectivePoint> points, FrontSource source, std::string provenance)
    : points_(nondominated_sorted(std::move(points))), source_(source), provenance_(std::move(provenance))
{
}

double ReferenceFront::distance(const ObjectivePoint& y) const
{
    if (points_.empty()) {
        throw InvalidArgument("reference front is empty");
    }
    const auto start = std::lower_bound(points_.begin(), points_.end(), y.f0,
                                        [](const ObjectivePoint& a, double v) { return a.f0 < v; });
    const auto idx = static_cast<std::size_t>(start - points_.begin());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = idx; k < points_.size(); ++k) {
        const double dx = points_[k].f0 - y.f0;
        if (dx >= best) {
            break;
        }
        best = std::min(best, std::hypot(dx, points_[k].f1 - y.f1));
    }
    for (std::size_t k = idx; k-- > 0;) {
        const double dx = y.f0 - points_[k].f0;
        if (dx >= best) {
            break;
        }
        best = std::min(best, std::hypot(dx, points_[k].f1 - y.f1));
    }
    return best;
}

double delta_hv(const ObjectiveMatrix& A, double target_hv)
{
    if (!(target_hv >= 0.0)) {
        throw InvalidArgument("target hypervolume must be non-negative");
    }
    return target_hv - hypervolume(A);
}

double generational_distance(std::span<const ObjectivePoint> A, const ReferenceFront& front)
{
    if (front.empty()) {
        throw InvalidArgument("generational distance needs a non-empty reference front");
    }
    if (A.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const ObjectivePoint& y : A) {
        sum += front.distance(y);
    }
    return sum / static_cast<double>(A.size());
}

double generational_distance(const ObjectiveMatrix& A, const ReferenceFront& front)
{
    return generational_distance(A.rows(), front);
}

std::size_t nondominated_count(const ObjectiveMatrix& A) { return classify(A).count(Dominance::nondominated); }

std::vector<ObjectivePoint> approximation_set(const ObjectiveMatrix& A) { return classify(A).front_points; }

namespace {

FrontCurve rotated_ellipsoid_curve(std::size_t n)
{
    const auto problem = std::make_shared<SphereRotatedEllipsoid>(n);
    Eigen::MatrixXd R(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = problem->rotation()[i * n + j];
        }
    }
    Eigen::VectorXd w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w(static_cast<Eigen::Index>(i)) = problem->weights()[i];
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    c(0) = 1.0;
    const Eigen::MatrixXd H = R.transpose() * w.asDiagonal() * R;
    const Eigen::VectorXd b = R.transpose() * w.asDiagonal() * c;

    // Minimizers of lambda * f0 + f1 with lambda = 10^(12 - 24 t); both
    // objectives are convex, so this traces the whole front.
    return [problem, H, b, n](double t) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        if (t >= 1.0) {
            x = H.ldlt().solve(b);
        }
        else if (t > 0.0) {
            const double lambda = std::pow(10.0, 12.0 - 24.0 * t);
            Eigen::MatrixXd A = H;
            A.diagonal().array() += lambda / static_cast<double>(n);
            x = A.ldlt().solve(b);
        }
        return problem->objectives(std::span<const double>(x.data(), n));
    };
}

} // namespace

std::optional<FrontCurve> front_curve(std::string_view problem_id, std::size_t n)
{
    if (problem_id == "bisphere") {
        return FrontCurve([](double t) { return ObjectivePoint{t * t, (1.0 - t) * (1.0 - t)}; });
    }
    if (problem_id == "concave-bisphere") {
        return FrontCurve([](double t) { return ObjectivePoint{std::sqrt(t), std::sqrt(1.0 - t)}; });
    }
    if (problem_id == "sphere-rot-ellipsoid") {
        return rotated_ellipsoid_curve(n);
    }
    if (problem_id.size() == 4 && problem_id.substr(0, 3) == "wfg" && problem_id[3] >= '1' && problem_id[3] <= '9') {
        auto problem = std::shared_ptr<Problem>(make_problem(problem_id, n));
        auto wfg = std::static_pointer_cast<WfgProblem>(problem);
        return FrontCurve([wfg](double t) { return wfg->front_point(t); });
    }
    return std::nullopt;
}

ReferenceFront sample_front(const FrontCurve& curve, std::size_t count, FrontSource source, std::string provenance)
{
    if (count < 2) {
        throw InvalidArgument("sample_front needs at least two points");
    }
    const std::size_t dense = std::max<std::size_t>(20 * count, 200001);
    std::vector<double> ts(dense);
    std::vector<double> length(dense, 0.0);
    ObjectivePoint prev = curve(0.0);
    for (std::size_t k = 0; k < dense; ++k) {
        ts[k] = static_cast<double>(k) / static_cast<double>(dense - 1);
        const ObjectivePoint y = curve(ts[k]);
        if (k > 0) {
            length[k] = length[k - 1] + std::hypot(y.f0 - prev.f0, y.f1 - prev.f1);
        }
        prev = y;
    }
    const double total = length.back();

    std::vector<ObjectivePoint> points;
    points.reserve(count);
    std::size_t seg = 1;
    for (std::size_t i = 0; i < count; ++i) {
        if (i == 0) {
            points.push_back(curve(0.0));
            continue;
        }
        if (i + 1 == count) {
            points.push_back(curve(1.0));
            continue;
        }
        const double s = total * static_cast<double>(i) / static_cast<double>(count - 1);
        while (seg + 1 < dense && length[seg] < s) {
            ++seg;
        }
        const double span = length[seg] - length[seg - 1];
        const double u = span > 0.0 ? (s - length[seg - 1]) / span : 0.0;
        points.push_back(curve(ts[seg - 1] + u * (ts[seg] - ts[seg - 1])));
    }
    return ReferenceFront(std::move(points), source, std::move(provenance));
}

std::optional<ReferenceFront> default_front(std::string_view problem_id, std::size_t n)
{
    const auto curve = front_curve(problem_id, n);
    if (!curve) {
        return std::nullopt;
    }
    const bool analytic = problem_id == "bisphere" || problem_id == "concave-bisphere";
    const std::size_t count = analytic ? 100000 : 5000;
    std::ostringstream note;
    note << problem_id << " front, " << count << " points at equal arc length";
    return sample_front(*curve, count, analytic ? FrontSource::analytic : FrontSource::sampled, note.str());
}

namespace {

double staircase(const std::vector<ObjectivePoint>& pts, const ObjectivePoint& r)
{
    ObjectiveMatrix Y(pts, r);
    return hypervolume(Y);
}

// Golden-section maximization of f on [a, b]; also compares the endpoints.
template <class F>
double golden_max(F&& f, double a, double b, double& best_value)
{
    constexpr double inv_phi = 0.6180339887498949;
    double lo = a;
    double hi = b;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1.0e-15 * std::max(1.0, std::fabs(lo)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    double arg = f1 >= f2 ? x1 : x2;
    best_value = std::max(f1, f2);
    for (double edge : {a, b}) {
        const double v = f(edge);
        if (v > best_value) {
            best_value = v;
            arg = edge;
        }
    }
    return arg;
}

} // namespace

OptimalDistribution optimal_distribution(const FrontCurve& curve, std::size_t p, const ObjectivePoint& r,
                                         double tolerance, std::size_t max_sweeps)
{
    if (p == 0) {
        throw InvalidArgument("optimal_distribution needs p >= 1");
    }
    OptimalDistribution out;
    out.t.resize(p);
    out.points.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        out.t[i] = p == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(p - 1);
        out.points[i] = curve(out.t[i]);
    }

    // Contribution of point i given its neighbours: the box it adds to the
    // staircase plus the box of its right neighbour that depends on f1_i.
    const auto local = [&](std::size_t i, const ObjectivePoint& y) {
        const double left_f1 = i == 0 ? r.f1 : std::min(r.f1, out.points[i - 1].f1);
        double value = std::max(0.0, r.f0 - y.f0) * std::max(0.0, left_f1 - y.f1);
        if (i + 1 < p) {
            const ObjectivePoint& right = out.points[i + 1];
            value += std::max(0.0, r.f0 - right.f0) * std::max(0.0, std::min(y.f1, r.f1) - right.f1);
        }
        return value;
    };

    double hv = staircase(out.points, r);
    for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
        const double before = hv;
        for (std::size_t i = 0; i < p; ++i) {
            const double a = i == 0 ? 0.0 : out.t[i - 1];
            const double b = i + 1 == p ? 1.0 : out.t[i + 1];
            double value = 0.0;
            const double current = local(i, out.points[i]);
            const double t = golden_max([&](double s) { return local(i, curve(s)); }, a, b, value);
            if (value > current) {
                out.t[i] = t;
                out.points[i] = curve(t);
            }
        }
        hv = staircase(out.points, r);
        if (hv - before <= tolerance * std::max(1.0, std::fabs(hv))) {
            ++out.sweeps;
            break;
        }
    }
    out.hypervolume = hv;
    return out;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ReferenceFront read_front(std::istream& in, const std::string& name)
{
    std::vector<ObjectivePoint> points;
    std::string provenance;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t[0] == '#') {
            if (!provenance.empty()) {
                provenance += '\n';
            }
            provenance += trim(t.substr(1));
            continue;
        }
        std::istringstream fields(t);
        ObjectivePoint y;
        std::string extra;
        if (!(fields >> y.f0 >> y.f1) || (fields >> extra) || !std::isfinite(y.f0) || !std::isfinite(y.f1)) {
            throw InvalidArgument(name + ":" + std::to_string(number) + ": expected two finite numbers");
        }
        points.push_back(y);
    }
    if (points.empty()) {
        throw InvalidArgument(name + ": no points");
    }
    return ReferenceFront(std::move(points), FrontSource::external_file, std::move(provenance));
}

ReferenceFront read_front_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open front file " + path);
    }
    return read_front(in, path);
}

void write_front(std::ostream& out, const ReferenceFront& front)
{
    std::istringstream notes(front.provenance());
    std::string line;
    while (std::getline(notes, line)) {
        out << "# " << line << '\n';
    }
    out << "# source: " << to_string(front.source()) << ", " << front.size() << " points\n";
    out << std::setprecision(17);
    for (const ObjectivePoint& y : front.points()) {
        out << y.f0 << ' ' << y.f1 << '\n';
    }
}

TargetTable TargetTable::read(std::istream& in, const std::string& name)
{
    TargetTable table;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t[0] == '#') {
            table.comments_.push_back(trim(t.substr(1)));
            continue;
        }
        std::istringstream fields(t);
        TargetEntry e;
        if (!(fields >> e.problem >> e.n >> e.p >> e.hypervolume) || !std::isfinite(e.hypervolume)) {
            throw InvalidArgument(name + ":" + std::to_string(number) + ": expected `problem n p hv [method]`");
        }
        std::getline(fields, e.method);
        e.method = trim(e.method);
        table.set(std::move(e));
    }
    return table;
}

TargetTable TargetTable::read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open target table " + path);
    }
    return read(in, path);
}

void TargetTable::write(std::ostream& out) const
{
    for (const std::string& c : comments_) {
        out << "# " << c << '\n';
    }
    out << std::setprecision(17);
    for (const TargetEntry& e : entries_) {
        out << e.problem << ' ' << e.n << ' ' << e.p << ' ' << e.hypervolume;
        if (!e.method.empty()) {
            out << ' ' << e.method;
        }
        out << '\n';
    }
}

void TargetTable::set(TargetEntry entry)
{
    for (TargetEntry& e : entries_) {
        if (e.problem == entry.problem && e.n == entry.n && e.p == entry.p) {
            e = std::move(entry);
            return;
        }
    }
    entries_.push_back(std::move(entry));
}

std::optional<double> TargetTable::find(std::string_view problem, std::size_t n, std::size_t p) const
{
    for (const TargetEntry& e : entries_) {
        if (e.problem == problem && e.n == n && e.p == p) {
            return e.hypervolume;
        }
    }
    return std::nullopt;
}

} // namespace uhvga
