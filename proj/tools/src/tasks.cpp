#include "tasks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "skin/damping.hpp"
#include "skin/dynamics.hpp"
#include "skin/errors.hpp"
#include "skin/kspace.hpp"
#include "skin/ness.hpp"
#include "skin/oracle.hpp"

namespace skin::cli {

namespace {

using I64 = std::int64_t;

std::vector<double> momenta(const RunConfig& cfg) {
    const KspaceConfig kc = cfg.kspace.value_or(KspaceConfig{});
    if (!kc.momenta.empty()) return kc.momenta;
    std::vector<double> ks(kc.grid);
    for (int i = 0; i < kc.grid; ++i) ks[i] = 2.0 * kPi * i / kc.grid;
    return ks;
}

RapidityDecomposition decompose(const ModelSpec& m) { return rapidity_decompose(to_majorana(m)); }

InitialGaussianState initial_state(const RunConfig& cfg, const ModelSpec& m) {
    return std::visit(
        [&](const auto& init) -> InitialGaussianState {
            using T = std::decay_t<decltype(init)>;
            if constexpr (std::is_same_v<T, UnitFilling>) {
                return InitialGaussianState::unit_filling(m.n_modes());
            } else if constexpr (std::is_same_v<T, NessInitial>) {
                return InitialGaussianState::from_correlation(steady_state_correlation(m));
            } else {
                InitialGaussianState s{load_covariance(init.path)};
                if (s.n_sites() != m.n_modes())
                    throw ConfigError("custom covariance size does not match the model");
                s.validate();
                return s;
            }
        },
        cfg.evolve.initial);
}

TaskResult spectrum(const RunConfig& cfg) {
    Table t{"spectrum", {"k_or_index", "re", "im"}, {}};
    if (cfg.boundary == Boundary::Periodic) {
        for (double k : momenta(cfg))
            for (const cplx& l : closed_form_eigenvalues(cfg.model, k)) t.add({k, l.real(), l.imag()});
    } else {
        const auto dec = decompose(build_ssh_model(cfg.model, cfg.boundary));
        for (int m = 0; m < dec.n_normal_modes(); ++m)
            t.add({static_cast<I64>(m + 1), dec.betas(m).real(), dec.betas(m).imag()});
    }
    return {{t}, true, fmt::format("{} spectrum rows", t.rows.size())};
}

TaskResult ness(const RunConfig& cfg) {
    const auto m = build_ssh_model(cfg.model, cfg.boundary);
    const RVec occ = ness_occupations(decompose(m), m);
    Table t{"ness", {"site", "occupation"}, {}};
    for (Eigen::Index i = 0; i < occ.size(); ++i) t.add({static_cast<I64>(i + 1), occ(i)});
    return {{t}, true, fmt::format("NESS occupations for {} sites", occ.size())};
}

TaskResult modes(const RunConfig& cfg) {
    const auto dec = decompose(build_ssh_model(cfg.model, cfg.boundary));
    const RMat D = single_mode_deltas(dec);
    Table t{"modes", {"mode", "beta_re", "beta_im", "site", "delta"}, {}};
    for (int n = 0; n < dec.n_normal_modes(); ++n)
        for (int s = 0; s < dec.n_sites(); ++s)
            t.add({static_cast<I64>(n + 1), dec.betas(n).real(), dec.betas(n).imag(), static_cast<I64>(s + 1), D(s, n)});
    return {{t}, true, fmt::format("{} normal-mode profiles", dec.n_normal_modes())};
}

Table frequency_report(const SpectralAmplitudes& spec) {
    Table r{"frequency_report", {"pair_index", "omega_im", "site", "re_D", "im_D"}, {}};
    const auto order = frequency_order(spec);
    r.rows.reserve(order.size() * static_cast<std::size_t>(spec.n_sites()));
    for (int s = 0; s < spec.n_sites(); ++s)
        for (std::size_t i = 0; i < order.size(); ++i) {
            const int p = order[i];
            r.add({static_cast<I64>(i + 1), spec.omega(p).imag(), static_cast<I64>(s + 1), spec.D(p, s).real(),
                   spec.D(p, s).imag()});
        }
    return r;
}

TaskResult evolve(const RunConfig& cfg) {
    const auto m = build_ssh_model(cfg.model, cfg.boundary);
    const auto times = linspace(0.0, cfg.evolve.t_max, cfg.evolve.samples);
    const auto state = initial_state(cfg, m);
    Table t{"evolve", {"t", "site", "delta_g"}, {}};
    TaskResult res;
    if (cfg.evolve.method == EvolveMethod::Spectral) {
        const auto dec = decompose(m);
        const auto spec = interference_amplitudes(dec, f2_coefficients(dec, adjoint_two_point_table(state)));
        const auto ts = delta_g_timeseries(spec, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            for (Eigen::Index s = 0; s < ts.values.cols(); ++s)
                t.add({times[i], static_cast<I64>(s + 1), ts.values(static_cast<Eigen::Index>(i), s)});
        res.tables.push_back(std::move(t));
        res.tables.push_back(frequency_report(spec));
        res.message = fmt::format("{} samples, {} interfering pairs", times.size(), spec.n_pairs());
    } else {
        const Mat X = damping_matrix(m);
        const Mat dG0 = correlation_from_covariance(state.covariance) - steady_state_correlation(m);
        for (double time : times) {
            const Mat dG = propagate_deviation(X, dG0, time);
            for (Eigen::Index s = 0; s < dG.rows(); ++s) t.add({time, static_cast<I64>(s + 1), dG(s, s).real()});
        }
        res.tables.push_back(std::move(t));
        res.message = fmt::format("{} samples (damping propagation)", times.size());
    }
    return res;
}

TaskResult kspace(const RunConfig& cfg) {
    if (std::holds_alternative<NessInitial>(cfg.evolve.initial))
        throw ConfigError("kspace: initial must be unit_filling or custom_covariance");
    const auto times = linspace(0.0, cfg.evolve.t_max, cfg.evolve.samples);
    Mat G0 = Mat::Identity(cfg.model.n_modes(), cfg.model.n_modes());
    if (const auto* c = std::get_if<CustomCovariance>(&cfg.evolve.initial)) {
        InitialGaussianState s{load_covariance(c->path)};
        s.validate();
        if (s.n_sites() != cfg.model.n_modes()) throw ConfigError("custom covariance size does not match the model");
        G0 = correlation_from_covariance(s.covariance);
    }
    const bool eom = std::abs(cfg.model.gamma_minus()) <= 1e-14 && cfg.model.standard_angles(1e-12);
    Table t{"kspace", {"t", "k", "g_a", "g_b"}, {}};
    for (double k : momenta(cfg)) {
        const Mat Gk = k_correlation(G0, k);
        if (eom) {
            const auto traj = eom_evolve(cfg.model, k, TildeCorrelation::from_site_correlation(Gk), times);
            for (std::size_t i = 0; i < times.size(); ++i) {
                const auto [a, b] = g_k_from_tilde(traj[i]);
                t.add({times[i], k, a, b});
            }
        } else {
            const auto traj = damping_evolve_k(cfg.model, k, Gk, times);
            for (std::size_t i = 0; i < times.size(); ++i)
                t.add({times[i], k, traj[i](0, 0).real(), traj[i](1, 1).real()});
        }
    }
    return {{t}, true, fmt::format("{} momenta ({})", momenta(cfg).size(), eom ? "tilde-basis EOM" : "damping")};
}

TaskResult skin_scan(const RunConfig& cfg) {
    const ScanConfig sc = cfg.scan.value_or(ScanConfig{});
    Table t{"skin_scan",
            {"t1", "gamma_l", "gamma_g", "theta", "phi", "theta_p", "phi_p", "skin_absent", "residual"},
            {}};
    auto row = [&](const SshParams& p) {
        const auto v = skin_absent(p);
        t.add({p.t1, p.gamma_l, p.gamma_g, p.theta, p.phi, p.theta_p, p.phi_p, v.absent, v.residual});
    };
    auto step = [](double lo, double hi, int i, int n) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
    for (int i = 0; i < sc.theta_steps; ++i)
        for (int j = 0; j < sc.phi_steps; ++j) {
            SshParams p = cfg.model;
            p.theta = step(0.0, kPi, i, sc.theta_steps);
            p.phi = step(-kPi, kPi, j, sc.phi_steps);
            row(p);
        }
    std::mt19937_64 rng(sc.seed);
    std::uniform_real_distribution<double> hop(-2.0, 2.0), rate(0.0, 1.0), angle(-kPi, kPi);
    for (int d = 0; d < sc.random_draws; ++d) {
        SshParams p = cfg.model;
        p.t1 = hop(rng);
        p.gamma_l = rate(rng);
        p.gamma_g = rate(rng);
        p.theta = angle(rng);
        p.phi = angle(rng);
        p.theta_p = angle(rng);
        p.phi_p = angle(rng);
        row(p);
    }
    return {{t}, true, fmt::format("{} parameter points", t.rows.size())};
}

TaskResult oracle_check(const RunConfig& cfg) {
    if (!std::holds_alternative<UnitFilling>(cfg.evolve.initial))
        throw ConfigError("oracle-check: only the unit_filling initial state is supported");
    if (cfg.model.n_modes() > oracle::kMaxDenseSites)
        throw ConfigError(fmt::format("oracle-check: at most {} sites", oracle::kMaxDenseSites));
    const auto m = build_ssh_model(cfg.model, cfg.boundary);
    const int n = m.n_modes();
    const auto times = linspace(0.0, cfg.evolve.t_max, cfg.evolve.samples);
    const Mat rho0 = oracle::product_state(RVec::Ones(n));
    const auto dec = decompose(m);
    const auto amps = f2_coefficients(dec, adjoint_two_point_table(InitialGaussianState::unit_filling(n)));
    const Mat X = damping_matrix(m);
    const Mat Ginf = steady_state_correlation(m);
    const Mat dG0 = Mat::Identity(n, n) - Ginf;
    constexpr double tol = 1e-7;
    Table t{"oracle_check", {"t", "method", "max_abs_dev"}, {}};
    double worst = 0.0;
    for (double time : times) {
        const Mat Go = oracle::correlation_from_rho(oracle::dense_evolve(m, rho0, time));
        const double ds = (spectral_correlation(dec, amps, time) - Go).cwiseAbs().maxCoeff();
        const double dd = (propagate_deviation(X, dG0, time) + Ginf - Go).cwiseAbs().maxCoeff();
        t.add({time, std::string("spectral"), ds});
        t.add({time, std::string("damping"), dd});
        worst = std::max({worst, ds, dd});
    }
    TaskResult r{{t}, worst < tol, fmt::format("largest deviation from the dense oracle {:.3g} (tolerance {:.0e})", worst, tol)};
    return r;
}

}  // namespace

Mat load_covariance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read covariance '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("covariance '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("re")) throw ConfigError("covariance: expected {\"re\": [[...]], \"im\": [[...]]}");
    for (const auto& [key, _] : j.items())
        if (key != "re" && key != "im") throw ConfigError("covariance: unknown key '" + key + "'");
    auto read = [&](const char* key, Eigen::Index n) {
        RMat out = RMat::Zero(n, n);
        if (!j.contains(key)) return out;
        const auto& rows = j.at(key);
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
            throw ConfigError(std::string("covariance.") + key + ": wrong shape");
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
                throw ConfigError(std::string("covariance.") + key + ": wrong shape");
            for (Eigen::Index c = 0; c < n; ++c) {
                if (!row[static_cast<std::size_t>(c)].is_number())
                    throw ConfigError(std::string("covariance.") + key + ": expected numbers");
                out(r, c) = row[static_cast<std::size_t>(c)].get<double>();
            }
        }
        return out;
    };
    if (!j.at("re").is_array()) throw ConfigError("covariance.re: expected a matrix");
    const auto n = static_cast<Eigen::Index>(j.at("re").size());
    if (n == 0 || n % 2 != 0) throw ConfigError("covariance: dimension must be even and non-zero");
    const RMat re = read("re", n);
    const RMat im = read("im", n);
    return re.cast<cplx>() + I * im.cast<cplx>();
}

TaskResult run_task(const RunConfig& cfg) {
    cfg.validate();
    switch (cfg.task) {
        case Task::Spectrum: return spectrum(cfg);
        case Task::Ness: return ness(cfg);
        case Task::Modes: return modes(cfg);
        case Task::Evolve: return evolve(cfg);
        case Task::Kspace: return kspace(cfg);
        case Task::SkinScan: return skin_scan(cfg);
        case Task::OracleCheck: return oracle_check(cfg);
    }
    throw ConfigError("unknown task");
}

}  // namespace skin::cli
