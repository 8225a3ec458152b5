#include "qpdec/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qpdec/errors.hpp"
#include "qpdec/quadrature.hpp"
#include "qpdec/units.hpp"

namespace qpdec {

namespace {

void require_x_qp(double x_qp) {
    if (!(x_qp > 0.0) || !std::isfinite(x_qp))
        throw config_error("distribution: x_qp must be > 0");
}

}  // namespace

qp_distribution qp_distribution::thermal(double temperature, double x_qp) {
    require_x_qp(x_qp);
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw config_error("thermal distribution: temperature must be > 0");
    qp_distribution d;
    d.kind_ = dist_kind::thermal;
    d.temperature_ = temperature;
    d.x_qp_ = x_qp;
    return d;
}

qp_distribution qp_distribution::cold_strip(double width, double x_qp) {
    require_x_qp(x_qp);
    if (!(width > 0.0) || !std::isfinite(width))
        throw config_error("cold_strip distribution: width must be > 0");
    qp_distribution d;
    d.kind_ = dist_kind::cold_strip;
    d.width_ = width;
    d.x_qp_ = x_qp;
    return d;
}

qp_distribution qp_distribution::tabulated(std::vector<double> u,
                                           std::vector<double> occ,
                                           double x_qp) {
    require_x_qp(x_qp);
    if (u.size() != occ.size() || u.size() < 2)
        throw config_error("tabulated distribution: need >= 2 (u, occ) pairs");
    if (u.front() < 0.0)
        throw config_error("tabulated distribution: energies must be >= 0 "
                           "relative to the gap edge");
    double peak = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i]) || !std::isfinite(occ[i]))
            throw config_error("tabulated distribution: non-finite entry");
        if (i > 0 && u[i] <= u[i - 1])
            throw config_error(
                "tabulated distribution: energies must be strictly increasing");
        if (occ[i] < 0.0)
            throw config_error("tabulated distribution: occupation must be >= 0");
        peak = std::max(peak, occ[i]);
    }
    if (peak == 0.0)
        throw config_error("tabulated distribution: occupation is identically 0");
    qp_distribution d;
    d.kind_ = dist_kind::tabulated;
    d.tab_u_ = std::move(u);
    d.tab_occ_ = std::move(occ);
    d.x_qp_ = x_qp;
    return d;
}

qp_distribution qp_distribution::tabulated_from_file(const std::string& path,
                                                     double x_qp) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open distribution file: " + path);
    std::vector<double> u, occ;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;  // blank or comment-only line
        if (!(ls >> b)) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected two columns";
            throw config_error(os.str());
        }
        u.push_back(units::ghz_to_rad(a));
        occ.push_back(b);
    }
    return tabulated(std::move(u), std::move(occ), x_qp);
}

double qp_distribution::shape(double u) const {
    if (u < 0.0) return 0.0;
    switch (kind_) {
        case dist_kind::thermal:
            return std::exp(-u / temperature_);
        case dist_kind::cold_strip:
            return (u <= width_) ? 1.0 : 0.0;
        case dist_kind::tabulated: {
            if (u < tab_u_.front() || u > tab_u_.back()) return 0.0;
            const auto it =
                std::upper_bound(tab_u_.begin(), tab_u_.end(), u);
            if (it == tab_u_.begin()) return tab_occ_.front();
            if (it == tab_u_.end()) return tab_occ_.back();
            const std::size_t hi = static_cast<std::size_t>(it - tab_u_.begin());
            const std::size_t lo = hi - 1;
            const double t = (u - tab_u_[lo]) / (tab_u_[hi] - tab_u_[lo]);
            return tab_occ_[lo] + t * (tab_occ_[hi] - tab_occ_[lo]);
        }
    }
    return 0.0;
}

double qp_distribution::support_max() const {
    switch (kind_) {
        case dist_kind::thermal:
            return temperature_ * std::log(1e18);
        case dist_kind::cold_strip:
            return width_;
        case dist_kind::tabulated:
            return tab_u_.back();
    }
    return 0.0;
}

std::vector<double> qp_distribution::breakpoints() const {
    if (kind_ == dist_kind::tabulated) return tab_u_;
    return {};
}

double qp_distribution::norm_measure(double delta_l, double rel_tol,
                                     int max_panels) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mtx);
        if (cache_->valid && cache_->delta_l == delta_l &&
            cache_->rel_tol == rel_tol)
            return cache_->value;
    }
    // N = (1/delta_l) int_{delta_l}^{inf} d eps  eps n(eps - delta_l)
    //                        / sqrt(eps^2 - delta_l^2)
    // with eps = delta_l + v^2 the edge singularity cancels analytically:
    //   integrand dv = 2 (delta_l + v^2) shape(v^2) / sqrt(v^2 + 2 delta_l)
    auto f = [&](double v) {
        const double u = v * v;
        return 2.0 * (delta_l + u) * shape(u) /
               std::sqrt(u + 2.0 * delta_l) / delta_l;
    };
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (double u : breakpoints())
        if (u > 0.0 && u < support_max()) cuts.push_back(std::sqrt(u));
    cuts.push_back(std::sqrt(support_max()));
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    int evals = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        auto r = gk_adaptive_scalar(f, cuts[i], cuts[i + 1], rel_tol, 1e-300,
                                    max_panels);
        evals += r.evaluations;
        if (!r.converged)
            throw quadrature_error(
                "distribution norm measure did not converge");
        total += r.value[0];
    }
    if (!(total > 0.0))
        throw config_error("distribution has zero density measure");
    {
        std::lock_guard<std::mutex> lk(cache_->mtx);
        cache_->valid = true;
        cache_->delta_l = delta_l;
        cache_->rel_tol = rel_tol;
        cache_->value = total;
    }
    return total;
}

}  // namespace qpdec
