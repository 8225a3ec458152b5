#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace qpdec {

enum class dist_kind {
    thermal,     // e^{-u/T} above the gap edge
    cold_strip,  // uniform box of width w above the gap edge
    tabulated,   // piecewise-linear table of occupation vs energy
};

// Quasiparticle occupation in the left lead, parametrized by the energy above
// the gap edge u = eps - delta_l (rad/s).  The shape is unnormalized; rates
// scale it by x_qp through the standard density measure, so only the profile
// matters here.
class qp_distribution {
  public:
    static qp_distribution thermal(double temperature, double x_qp);
    static qp_distribution cold_strip(double width, double x_qp);
    // table of (u, occupation) pairs; u strictly increasing, u[0] >= 0
    static qp_distribution tabulated(std::vector<double> u,
                                     std::vector<double> occ, double x_qp);
    // two-column text file: energy above the gap edge in GHz, occupation.
    // '#' starts a comment, blank lines ignored.
    static qp_distribution tabulated_from_file(const std::string& path,
                                               double x_qp);

    dist_kind kind() const { return kind_; }
    double x_qp() const { return x_qp_; }
    double temperature() const { return temperature_; }
    double width() const { return width_; }

    // occupation profile at energy u >= 0 above the gap edge
    double shape(double u) const;

    // upper support bound in u; thermal profiles are cut where the occupation
    // falls below 1e-18 of its edge value
    double support_max() const;

    // breakpoints (in u) that quadrature panels should align with
    std::vector<double> breakpoints() const;

    // cached standard density measure (1/delta_l) * int d eps eps n /
    // sqrt(eps^2 - delta_l^2); computed on first use for a given delta_l
    double norm_measure(double delta_l, double rel_tol, int max_panels) const;

  private:
    qp_distribution() = default;

    dist_kind kind_{dist_kind::thermal};
    double x_qp_{0.0};
    double temperature_{0.0};  // thermal only
    double width_{0.0};        // cold_strip only
    std::vector<double> tab_u_;
    std::vector<double> tab_occ_;

    struct norm_cache {
        std::mutex mtx;
        bool valid{false};
        double delta_l{0.0};
        double rel_tol{0.0};
        double value{0.0};
    };
    std::shared_ptr<norm_cache> cache_{std::make_shared<norm_cache>()};
};

}
