#include "qpdec/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qpdec/errors.hpp"
#include "qpdec/quadrature.hpp"
#include "qpdec/special.hpp"
#include "qpdec/units.hpp"

namespace qpdec {

namespace {

// i^k for possibly negative k
std::complex<double> ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

std::string node_key(const diag_node& v) {
    std::ostringstream os;
    os << "H(" << v.m << "," << v.n << ")";
    const bool any = v.ext > 0 || !v.children.empty();
    if (any) {
        os << "[";
        bool first = true;
        for (int e = 0; e < v.ext; ++e) {
            if (!first) os << ",";
            os << "ext";
            first = false;
        }
        for (const auto& c : v.children) {
            if (!first) os << ",";
            os << node_key(c);
            first = false;
        }
        os << "]";
    }
    return os.str();
}

std::string root_key(const diag_node& v) {
    std::string s = node_key(v);
    s[0] = 'T';
    return s;
}

int count_photons(const diag_node& v) {
    int p = v.n;
    for (const auto& c : v.children) p += count_photons(c);
    return p;
}

int count_ext(const diag_node& v) {
    int e = v.ext;
    for (const auto& c : v.children) e += count_ext(c);
    return e;
}

int count_vertices(const diag_node& v) {
    int k = 1;
    for (const auto& c : v.children) k += count_vertices(c);
    return k;
}

bool contains_screening(const diag_node& v) {
    for (const auto& c : v.children) {
        if ((c.m == 1 && c.n == 1) || contains_screening(c)) return true;
    }
    return false;
}

// m! / (product over groups of identical children of group!)
double vertex_symmetry(const diag_node& v) {
    double mult = factorial(v.m);
    std::map<std::string, int> groups;
    for (const auto& c : v.children) ++groups[node_key(c)];
    for (const auto& g : groups) mult /= factorial(g.second);
    return mult;
}

double tree_multiplicity(const diag_node& v) {
    double mult = vertex_symmetry(v);
    for (const auto& c : v.children) mult *= tree_multiplicity(c);
    return mult;
}

// interior (Josephson-phase) vertex classes kept at tree level
bool valid_interior(int m, int n) {
    if ((m + n) % 2 != 0) return false;
    if (n >= 1) return m >= 1;
    return m >= 4;
}

// all canonical interior subtrees consuming exactly (photons, externals)
struct subtree_gen {
    // memo[(p, e)] -> list of subtrees sorted by canonical key
    std::map<std::pair<int, int>, std::vector<diag_node>> memo;

    const std::vector<diag_node>& subtrees(int p, int e) {
        const auto key = std::make_pair(p, e);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<diag_node> out;
        if (p + e >= 1) {  // no vacuum subtrees
            for (int n = 0; n <= p; ++n) {
                // children must carry >= 1 resource each: m - 1 - ext <= left
                const int left = (p - n) + e;
                for (int m = 1; m <= 1 + left + n; ++m) {
                    if (!valid_interior(m, n)) continue;
                    const int slots = m - 1;
                    if (slots > left) continue;
                    for (int eh = 0; eh <= std::min(e, slots); ++eh) {
                        diag_node base;
                        base.m = m;
                        base.n = n;
                        base.ext = eh;
                        fill_children(base, slots - eh, p - n, e - eh, "",
                                      out);
                    }
                }
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const diag_node& a, const diag_node& b) {
                      return node_key(a) < node_key(b);
                  });
        auto [pos, ok] = memo.emplace(key, std::move(out));
        (void)ok;
        return pos->second;
    }

    // append `slots` children consuming exactly (p, e), keys non-decreasing
    void fill_children(const diag_node& partial, int slots, int p, int e,
                       const std::string& min_key,
                       std::vector<diag_node>& out) {
        if (slots == 0) {
            if (p == 0 && e == 0) out.push_back(partial);
            return;
        }
        if (p + e < slots) return;  // each child needs >= 1 resource
        for (int pc = 0; pc <= p; ++pc) {
            for (int ec = 0; ec <= e; ++ec) {
                if (pc + ec < 1) continue;
                // a child cannot consume so much that the rest starve
                if ((p - pc) + (e - ec) < slots - 1) continue;
                for (const diag_node& c : subtrees(pc, ec)) {
                    const std::string k = node_key(c);
                    if (k < min_key) continue;
                    diag_node next = partial;
                    next.children.push_back(c);
                    fill_children(next, slots - 1, p - pc, e - ec, k, out);
                }
            }
        }
    }
};

// shared vertex coefficient rules; `raw` keeps the Bessel factors Z_n
std::complex<double> coeff_phi_impl(int m, int n, double a, double ej,
                                    bool raw) {
    if ((m + n) % 2 != 0) return {0.0, 0.0};
    const double z = raw ? z_factor(n, a) : 1.0;
    return -ipow(n - m) * std::pow(a, n) /
           (std::pow(2.0, n) * factorial(n)) / factorial(m) * z * ej;
}

std::complex<double> coeff_tunneling_impl(int m, int n, double a, bool raw) {
    const double z = raw ? z_factor(n, 0.5 * a) : 1.0;
    return ipow(n - m) * std::pow(a, n) / (std::pow(4.0, n) * factorial(n)) /
           (std::pow(2.0, m) * factorial(m)) * z;
}

}  // namespace

std::complex<double> vertex_coeff_phi(int m, int n, double a,
                                      const device_params& dev) {
    if (m < 0 || n < 0 || m + n < 1)
        throw config_error("vertex_coeff_phi needs m, n >= 0 and m + n >= 1");
    return coeff_phi_impl(m, n, a, ej_total(dev), true);
}

channel_amplitude vertex_coeff_tunneling(int m, int n, double a) {
    if (m < 0 || n < 0)
        throw config_error("vertex_coeff_tunneling needs m, n >= 0");
    channel_amplitude out;
    out.n_photons = n;
    out.uu = coeff_tunneling_impl(m, n, a, true);
    out.vv = out.uu * (((m + n) % 2 == 0) ? -1.0 : 1.0);
    return out;
}

std::vector<diagram> enumerate_diagrams(int n_photons, int max_vertices) {
    if (n_photons < 1) throw config_error("n_photons must be >= 1");
    if (n_photons > 5 || max_vertices < 1 || max_vertices > 6)
        throw config_error(
            "diagram enumeration budget: n_photons <= 5, max_vertices in "
            "[1, 6]");
    subtree_gen gen;
    std::vector<diagram> out;

    // root = tunneling vertex: any (m >= 0, n >= 0), no parity constraint
    for (int n = 0; n <= n_photons; ++n) {
        const int left = (n_photons - n) + 1;  // remaining photons + the ext leg
        for (int m = 0; m <= left; ++m) {
            for (int eh = 0; eh <= std::min(1, m); ++eh) {
                diag_node base;
                base.m = m;
                base.n = n;
                base.ext = eh;
                std::vector<diag_node> roots;
                gen.fill_children(base, m - eh, n_photons - n, 1 - eh, "",
                                  roots);
                for (diag_node& r : roots) {
                    if (count_vertices(r) > max_vertices) continue;
                    diagram d;
                    d.n_photons = n_photons;
                    d.multiplicity = tree_multiplicity(r);
                    d.core = !contains_screening(r);
                    d.topology = root_key(r);
                    d.root = std::move(r);
                    out.push_back(std::move(d));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const diagram& a, const diagram& b) {
        return a.topology < b.topology;
    });
    return out;
}

double theta_junction(const device_params& dev, int junction) {
    // amplitude phase theta_j = -c_j / 2, from the same junction offsets the
    // pair-breaking matrix elements use
    return -0.5 * junction_offset(dev, junction);
}

double bold_screening_factor(const device_params& dev, const drive_spec& drv,
                             const numerics& num) {
    return 1.0 + d0_response(dev, drv.omega_d, num);
}

namespace {

struct eval_ctx {
    const device_params* dev;
    double a;
    double omega_d;
    double omega_ext;  // +omega_q for relaxation, -omega_q for excitation
    double ej;
    amplitude_mode mode;
    const numerics* num;
};

// vertex coefficient excluding channel structure; interior vertices are
// channel-neutral, the tunneling vertex carries the uu/vv split (applied by
// the caller)
std::complex<double> vertex_coeff(const eval_ctx& ctx, const diag_node& v,
                                  bool tunneling) {
    const bool raw = ctx.mode == amplitude_mode::raw;
    if (tunneling) return coeff_tunneling_impl(v.m, v.n, ctx.a, raw);
    return coeff_phi_impl(v.m, v.n, ctx.a, ctx.ej, raw);
}

// frequency flowing through the edge above this subtree
double subtree_freq(const eval_ctx& ctx, const diag_node& v) {
    return count_photons(v) * ctx.omega_d + count_ext(v) * ctx.omega_ext;
}

std::complex<double> eval_node(const eval_ctx& ctx, const diag_node& v,
                               bool tunneling) {
    std::complex<double> val = vertex_coeff(ctx, v, tunneling);
    for (const auto& c : v.children) {
        val *= propagator_d(*ctx.dev, subtree_freq(ctx, c), *ctx.num);
        val *= eval_node(ctx, c, false);
    }
    return val;
}

}  // namespace

channel_amplitude evaluate_one(const device_params& dev, const drive_spec& drv,
                               const diagram& diag, transition tr,
                               amplitude_mode mode, const numerics& num) {
    eval_ctx ctx;
    ctx.dev = &dev;
    ctx.a = drv.a;
    ctx.omega_d = drv.omega_d;
    ctx.omega_ext = (tr == transition::relax_10) ? omega_q(dev) : -omega_q(dev);
    ctx.ej = ej_total(dev);
    ctx.mode = mode;
    ctx.num = &num;

    std::complex<double> val = eval_node(ctx, diag.root, true);
    val *= diag.multiplicity * phi_zpf(dev);

    channel_amplitude out;
    out.n_photons = diag.n_photons;
    out.uu = val;
    // relative vv sign from the coherence-factor structure of the tunneling
    // vertex: -(-1)^(m_T + n_T)
    const double vv_sign = ((diag.root.m + diag.root.n) % 2 == 0) ? -1.0 : 1.0;
    out.vv = val * vv_sign;
    return out;
}

channel_amplitude evaluate_diagrams(const device_params& dev,
                                    const drive_spec& drv,
                                    const std::vector<diagram>& diags,
                                    transition tr, amplitude_mode mode,
                                    const numerics& num) {
    channel_amplitude out;
    detail::neumaier ur, ui, vr, vi;
    for (const diagram& d : diags) {
        const channel_amplitude one = evaluate_one(dev, drv, d, tr, mode, num);
        out.n_photons = one.n_photons;
        ur.add(one.uu.real());
        ui.add(one.uu.imag());
        vr.add(one.vv.real());
        vi.add(one.vv.imag());
    }
    out.uu = {ur.get(), ui.get()};
    out.vv = {vr.get(), vi.get()};
    return out;
}

channel_amplitude evaluate_amplitude(const device_params& dev,
                                     const drive_spec& drv, int n_photons,
                                     transition tr, amplitude_mode mode,
                                     const numerics& num) {
    return evaluate_diagrams(dev, drv, enumerate_diagrams(n_photons), tr, mode,
                             num);
}

}  // namespace qpdec
