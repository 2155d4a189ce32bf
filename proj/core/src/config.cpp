#include "pmdsim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pmdsim/errors.hpp"
#include "pmdsim/prototype.hpp"

namespace pmdsim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
    std::ostringstream os;
    os << "config: key '" << key << "' (line " << line << "): " << what;
    throw config_error(os.str());
}

double parse_double(const std::string& key, int line, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) fail(key, line, "not a number: '" + v + "'");
        return d;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(key, line, "not a number: '" + v + "'");
    }
}

long long parse_int(const std::string& key, int line, const std::string& v) {
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        fail(key, line, "not an integer: '" + v + "'");
    return out;
}

std::vector<double> parse_list(const std::string& key, int line, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, line, item));
    }
    if (out.empty()) fail(key, line, "empty list");
    return out;
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::sc_qpsk: return "sc_qpsk";
        case Scheme::ofdm_qam: return "ofdm_qam";
        default: return "fbmc_oqam";
    }
}

}  // namespace

SchemeConfig RunConfig::scheme_config() const {
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.n_subcarriers = n_subcarriers;
    cfg.subcarrier_spacing = subcarrier_spacing_hz;
    cfg.qam_order = qam_order;
    cfg.cp_samples = (scheme == Scheme::ofdm_qam) ? cp_samples : 0;
    cfg.oversampling = oversampling;
    const int proto_sps =
        (scheme == Scheme::sc_qpsk) ? oversampling : n_subcarriers * oversampling;
    cfg.prototype = (prototype_kind == PrototypeKind::srrc)
                        ? srrc_prototype(rolloff, span_symbols, proto_sps)
                        : rect_prototype(proto_sps);
    return cfg;
}

Scenario RunConfig::scenario() const {
    Scenario sc;
    sc.scheme_config = scheme_config();
    sc.gamma = gamma;
    sc.equalization = equalization;
    sc.seed = seed;
    sc.min_errors = min_errors;
    sc.max_bits = max_bits;
    sc.frame_slots = frame_slots;
    return sc;
}

std::vector<double> RunConfig::ebn0_grid() const {
    std::vector<double> grid;
    for (double v = ebn0_start; v <= ebn0_stop + 1e-9; v += ebn0_step) grid.push_back(v);
    return grid;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::pair<std::string, int>> kv;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(key, line_no, "expected 'key = value'");
        if (kv.count(key)) fail(key, line_no, "duplicate key");
        kv[key] = {value, line_no};
    }

    auto take = [&](const std::string& key, auto&& apply) {
        const auto it = kv.find(key);
        if (it == kv.end()) return;
        apply(it->second.first, it->second.second);
        kv.erase(it);
    };

    take("scheme", [&](const std::string& v, int ln) {
        if (v == "sc_qpsk") cfg.scheme = Scheme::sc_qpsk;
        else if (v == "ofdm_qam") cfg.scheme = Scheme::ofdm_qam;
        else if (v == "fbmc_oqam") cfg.scheme = Scheme::fbmc_oqam;
        else fail("scheme", ln, "expected sc_qpsk | ofdm_qam | fbmc_oqam");
    });
    take("n_subcarriers", [&](const std::string& v, int ln) {
        const long long n = parse_int("n_subcarriers", ln, v);
        if (n < 1 || n > 16384) fail("n_subcarriers", ln, "out of range [1, 16384]");
        cfg.n_subcarriers = static_cast<int>(n);
    });
    take("subcarrier_spacing_hz", [&](const std::string& v, int ln) {
        cfg.subcarrier_spacing_hz = parse_double("subcarrier_spacing_hz", ln, v);
        if (!(cfg.subcarrier_spacing_hz > 0.0))
            fail("subcarrier_spacing_hz", ln, "must be > 0");
    });
    take("qam_order", [&](const std::string& v, int ln) {
        const long long m = parse_int("qam_order", ln, v);
        if (m != 4 && m != 16) fail("qam_order", ln, "must be 4 or 16");
        cfg.qam_order = static_cast<int>(m);
    });
    take("cp_samples", [&](const std::string& v, int ln) {
        const long long c = parse_int("cp_samples", ln, v);
        if (c < 0) fail("cp_samples", ln, "must be >= 0");
        cfg.cp_samples = static_cast<int>(c);
    });
    take("oversampling", [&](const std::string& v, int ln) {
        const long long o = parse_int("oversampling", ln, v);
        if (o < 1 || o > 64) fail("oversampling", ln, "out of range [1, 64]");
        cfg.oversampling = static_cast<int>(o);
    });
    take("prototype", [&](const std::string& v, int ln) {
        if (v == "rectangular") cfg.prototype_kind = PrototypeKind::rectangular;
        else if (v == "srrc") cfg.prototype_kind = PrototypeKind::srrc;
        else fail("prototype", ln, "expected rectangular | srrc");
    });
    take("rolloff", [&](const std::string& v, int ln) {
        cfg.rolloff = parse_double("rolloff", ln, v);
        if (!(cfg.rolloff > 0.0 && cfg.rolloff <= 1.0)) fail("rolloff", ln, "must be in (0, 1]");
    });
    take("span_symbols", [&](const std::string& v, int ln) {
        const long long s = parse_int("span_symbols", ln, v);
        if (s < 2 || s % 2 != 0) fail("span_symbols", ln, "must be positive and even");
        cfg.span_symbols = static_cast<int>(s);
    });
    take("gamma", [&](const std::string& v, int ln) {
        cfg.gamma = parse_double("gamma", ln, v);
        if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) fail("gamma", ln, "must be in [0, 1]");
    });
    take("equalization", [&](const std::string& v, int ln) {
        if (v == "none") cfg.equalization = Equalization::none;
        else if (v == "zf") cfg.equalization = Equalization::zf;
        else fail("equalization", ln, "expected none | zf");
    });
    take("seed", [&](const std::string& v, int ln) {
        cfg.seed = static_cast<std::uint64_t>(parse_int("seed", ln, v));
    });
    take("min_errors", [&](const std::string& v, int ln) {
        cfg.min_errors = parse_int("min_errors", ln, v);
        if (cfg.min_errors < 1) fail("min_errors", ln, "must be >= 1");
    });
    take("max_bits", [&](const std::string& v, int ln) {
        cfg.max_bits = parse_int("max_bits", ln, v);
        if (cfg.max_bits < 1) fail("max_bits", ln, "must be >= 1");
    });
    take("frame_slots", [&](const std::string& v, int ln) {
        const long long f = parse_int("frame_slots", ln, v);
        if (f < 1) fail("frame_slots", ln, "must be >= 1");
        cfg.frame_slots = static_cast<int>(f);
    });
    take("dgd_norm", [&](const std::string& v, int ln) {
        cfg.dgd_norm = parse_list("dgd_norm", ln, v);
        for (double d : cfg.dgd_norm)
            if (d < 0.0) fail("dgd_norm", ln, "values must be >= 0");
    });
    take("target_ber", [&](const std::string& v, int ln) {
        cfg.target_ber = parse_double("target_ber", ln, v);
        if (!(cfg.target_ber > 0.0 && cfg.target_ber < 0.5))
            fail("target_ber", ln, "must be in (0, 0.5)");
    });
    take("ebn0_start", [&](const std::string& v, int ln) {
        cfg.ebn0_start = parse_double("ebn0_start", ln, v);
    });
    take("ebn0_stop", [&](const std::string& v, int ln) {
        cfg.ebn0_stop = parse_double("ebn0_stop", ln, v);
    });
    take("ebn0_step", [&](const std::string& v, int ln) {
        cfg.ebn0_step = parse_double("ebn0_step", ln, v);
        if (!(cfg.ebn0_step > 0.0)) fail("ebn0_step", ln, "must be > 0");
    });
    take("coefficient_a", [&](const std::string& v, int ln) {
        cfg.coefficient_a = parse_double("coefficient_a", ln, v);
        if (!(cfg.coefficient_a > 0.0)) fail("coefficient_a", ln, "must be > 0");
    });
    take("time_normalization", [&](const std::string& v, int ln) {
        if (v == "bit_interval") cfg.time_normalization = TimeNormalization::bit_interval;
        else if (v == "symbol_duration")
            cfg.time_normalization = TimeNormalization::symbol_duration;
        else fail("time_normalization", ln, "expected bit_interval | symbol_duration");
    });
    take("neighborhood", [&](const std::string& v, int ln) {
        const long long n = parse_int("neighborhood", ln, v);
        if (n < 1) fail("neighborhood", ln, "must be >= 1");
        cfg.neighborhood = static_cast<int>(n);
    });

    if (!kv.empty()) {
        const auto& [key, val] = *kv.begin();
        fail(key, val.second, "unknown key");
    }

    // cross-field checks
    if (cfg.scheme != Scheme::ofdm_qam && cfg.cp_samples > 0)
        throw config_error("config: key 'cp_samples': cyclic prefix is OFDM-only");
    if (cfg.scheme != Scheme::sc_qpsk && cfg.oversampling < 2)
        throw config_error("config: key 'oversampling': multicarrier schemes need >= 2");
    if (!(cfg.ebn0_stop >= cfg.ebn0_start))
        throw config_error("config: key 'ebn0_stop': must be >= ebn0_start");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string run_ber_sweep(const RunConfig& cfg, int workers) {
    std::ostringstream csv;
    csv << "scheme,n_subcarriers,gamma,dgd_norm,ebn0_db,bits,errors,ber,ber_ci95\n";
    const auto grid = cfg.ebn0_grid();
    for (double dgd : cfg.dgd_norm) {
        Scenario sc = cfg.scenario();
        sc.dgd_norm = dgd;
        const BerCurve curve = sweep_ebn0(sc, grid, workers);
        for (const auto& p : curve.points) {
            csv << scheme_name(cfg.scheme) << ',' << cfg.n_subcarriers << ','
                << format_number(cfg.gamma) << ',' << format_number(dgd) << ','
                << format_number(p.ebn0_db) << ',' << p.bits_simulated << ',' << p.bit_errors
                << ',' << format_number(p.ber) << ',' << format_number(p.ci95) << '\n';
        }
    }
    return csv.str();
}

std::string run_penalty(const RunConfig& cfg, int workers) {
    std::ostringstream csv;
    csv << "scheme,n_subcarriers,gamma,dgd_norm,required_ebn0_db,penalty_db\n";
    const PenaltyCurve curve =
        measure_penalty(cfg.scenario(), cfg.dgd_norm, cfg.target_ber, cfg.ebn0_grid(), workers);
    for (const auto& p : curve.points) {
        csv << scheme_name(cfg.scheme) << ',' << cfg.n_subcarriers << ','
            << format_number(cfg.gamma) << ',' << format_number(p.dgd_norm) << ','
            << format_number(p.required_ebn0_db) << ',' << format_number(p.penalty_db) << '\n';
    }
    return csv.str();
}

std::string run_analytic(const RunConfig& cfg) {
    std::ostringstream csv;
    csv << "scheme,model,coefficient_a,time_normalization,dgd_norm,penalty_db\n";
    const SchemeConfig scfg = cfg.scheme_config();
    PenaltyModel model;
    model.coefficient_a = cfg.coefficient_a;
    model.bit_interval = scfg.bit_interval();
    model.symbol_duration = 1.0 / cfg.subcarrier_spacing_hz;
    model.n_subcarriers = cfg.n_subcarriers;
    model.gamma = cfg.gamma;
    model.time_normalization = cfg.time_normalization;

    const bool single = cfg.scheme == Scheme::sc_qpsk;
    const char* norm = (cfg.time_normalization == TimeNormalization::bit_interval)
                           ? "bit_interval"
                           : "symbol_duration";
    for (double dgd_norm : cfg.dgd_norm) {
        const double dgd = dgd_norm * model.bit_interval;
        double penalty;
        if (single) {
            penalty = penalty_sc(model, dgd);
        } else {
            std::vector<double> per_n(cfg.n_subcarriers);
            for (int n = 1; n <= cfg.n_subcarriers; ++n)
                per_n[n - 1] = penalty_subcarrier(model, n, dgd);
            penalty = penalty_multicarrier(per_n);
        }
        csv << scheme_name(cfg.scheme) << ',' << (single ? "single_carrier" : "multicarrier")
            << ',' << format_number(cfg.coefficient_a) << ',' << norm << ','
            << format_number(dgd_norm) << ',' << format_number(penalty) << '\n';
    }
    return csv.str();
}

std::string run_ortho_check(const RunConfig& cfg) {
    std::ostringstream csv;
    csv << "prototype,rolloff,span,n_subcarriers,defect_db\n";
    const SchemeConfig scfg = cfg.scheme_config();
    const OrthoBasis basis = (cfg.scheme == Scheme::fbmc_oqam) ? OrthoBasis::fbmc_real
                                                               : OrthoBasis::ofdm_complex;
    const Prototype& proto =
        (cfg.scheme == Scheme::ofdm_qam)
            ? rect_prototype(cfg.n_subcarriers * cfg.oversampling)
            : scfg.prototype;
    const double defect =
        orthogonality_defect(proto, cfg.n_subcarriers, cfg.neighborhood, basis);
    const bool rect = proto.kind == PrototypeKind::rectangular;
    csv << (rect ? "rectangular" : "srrc") << ',' << format_number(rect ? 0.0 : cfg.rolloff)
        << ',' << proto.span_symbols << ',' << cfg.n_subcarriers << ','
        << format_number(defect) << '\n';
    return csv.str();
}

std::string run_fit_a(const RunConfig& cfg, int workers) {
    std::ostringstream csv;
    csv << "scheme,fitted_a,residual_rms_db\n";
    const PenaltyCurve curve =
        measure_penalty(cfg.scenario(), cfg.dgd_norm, cfg.target_ber, cfg.ebn0_grid(), workers);
    const double tb = curve.bit_interval;
    const double a = fit_coefficient_a(curve, cfg.gamma, tb);
    const double resid = fit_residual_rms(curve, cfg.gamma, tb, a);
    csv << scheme_name(cfg.scheme) << ',' << format_number(a) << ',' << format_number(resid)
        << '\n';
    return csv.str();
}

}  // namespace

void run_command(Command command, const RunConfig& config, const std::string& out_path,
                 int workers) {
    std::string csv;
    switch (command) {
        case Command::ber_sweep: csv = run_ber_sweep(config, workers); break;
        case Command::penalty: csv = run_penalty(config, workers); break;
        case Command::analytic: csv = run_analytic(config); break;
        case Command::ortho_check: csv = run_ortho_check(config); break;
        case Command::fit_a: csv = run_fit_a(config, workers); break;
    }
    write_file(out_path, csv);
}

}  // namespace pmdsim
