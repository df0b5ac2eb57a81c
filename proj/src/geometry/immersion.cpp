#include <stdexcept>

#include "rigidlab/geometry.hpp"

namespace rigidlab {

Immersion::Immersion(std::string name, std::vector<Expression> components, std::vector<double> lo,
                     std::vector<double> hi, std::vector<bool> periodic, Orientation orientation)
    : name_(std::move(name)),
      components_(std::move(components)),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      periodic_(std::move(periodic)),
      orientation_(orientation) {
    dim_ = static_cast<int>(lo_.size());
    if (dim_ < 1 || dim_ > kMaxDim) throw std::invalid_argument("immersion: chart dimension must be in 1..4");
    if (static_cast<int>(hi_.size()) != dim_ || static_cast<int>(periodic_.size()) != dim_)
        throw std::invalid_argument("immersion: domain and periodic flags must match the chart dimension");
    if (static_cast<int>(components_.size()) != dim_ + 1)
        throw std::invalid_argument("immersion: need n+1 component expressions");
    for (const auto& c : components_)
        if (c.empty() || c.dim() > dim_) throw std::invalid_argument("immersion: component uses too many variables");
    for (int i = 0; i < dim_; ++i)
        if (!(lo_[i] < hi_[i])) throw std::invalid_argument("immersion: empty domain interval");
}

Immersion Immersion::with_orientation(Orientation o) const {
    Immersion out = *this;
    out.orientation_ = o;
    return out;
}

Immersion Immersion::renamed(std::string name) const {
    Immersion out = *this;
    out.name_ = std::move(name);
    return out;
}

bool Immersion::contains(std::span<const double> x, double slack) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    for (int i = 0; i < dim_; ++i) {
        if (periodic_[i]) continue;
        if (x[i] < lo_[i] - slack || x[i] > hi_[i] + slack) return false;
    }
    return true;
}

std::vector<Jet> Immersion::position(std::span<const Jet> vars) const {
    std::vector<Jet> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(vars));
    return out;
}

std::vector<Jet> Immersion::position(std::span<const double> x, int order) const {
    if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("immersion: point dimension mismatch");
    std::vector<Jet> vars;
    for (int i = 0; i < dim_; ++i) vars.push_back(Jet::variable(i, x[i], dim_, order));
    return position(vars);
}

Eigen::VectorXd Immersion::point(std::span<const double> x) const {
    const auto r = position(x, 0);
    Eigen::VectorXd out(r.size());
    for (std::size_t a = 0; a < r.size(); ++a) out(a) = r[a].value();
    return out;
}

std::vector<std::vector<double>> grid_nodes(const std::vector<double>& lo, const std::vector<double>& hi,
                                            const std::vector<bool>& periodic, const std::vector<int>& sizes) {
    const std::size_t n = lo.size();
    if (sizes.size() != n) throw std::invalid_argument("grid: one size per chart axis");
    std::vector<std::vector<double>> axes(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (sizes[a] < 1) throw std::invalid_argument("grid: sizes must be positive");
        const double h = (hi[a] - lo[a]) / sizes[a];
        for (int k = 0; k < sizes[a]; ++k) axes[a].push_back(lo[a] + (periodic[a] ? k : k + 0.5) * h);
    }
    std::vector<std::vector<double>> out(1, std::vector<double>());
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::vector<double>> next;
        for (const auto& p : out)
            for (double v : axes[a]) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

Immersion transformed(const Immersion& imm, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                      std::string name) {
    const int m = imm.ambient_dim();
    if (a.rows() != m || a.cols() != m || b.size() != m)
        throw std::invalid_argument("transformed: matrix/vector size must match the ambient dimension");
    const int n = imm.dim();
    std::vector<Expression> comps;
    for (int i = 0; i < m; ++i) {
        Expression e = Expression::literal(b(i), n);
        for (int j = 0; j < m; ++j) {
            if (a(i, j) == 0.0) continue;
            e = e + Expression::literal(a(i, j), n) * imm.components()[j];
        }
        comps.push_back(e);
    }
    return Immersion(std::move(name), std::move(comps), imm.lower(), imm.upper(), imm.periodic_flags(),
                     imm.orientation());
}

}  // namespace rigidlab
