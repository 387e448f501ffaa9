// qvol: batch front-end over the invariant, geometry and Fourier modules.
//
// Subcommands: rt, geom, verify, fourier-check, specfun. Options live on the
// root app so a flat key=value config file (--config) can preset any of them;
// command-line flags override the file. All numeric output is emitted at full
// round-trip precision, and identical configs produce byte-identical files.
//
// Exit codes: 0 success, 1 usage or computation failure, 2 the excluded
// trivial filling, 3 growth hypothesis rejected for the requested angle.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qvol/cfrac.hpp"
#include "qvol/fourier.hpp"
#include "qvol/geom.hpp"
#include "qvol/qinv.hpp"
#include "qvol/specfun.hpp"

using namespace qvol;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
    long long p = 0, q = 0, a0 = 0;
    std::string theta;
    int r = 0;
    int m0 = -1;
    int rMin = 51, rMax = 351, rStep = 50;
    std::string mode = "symmetrized";
    std::string branch = "minus";
    std::string precision = "standard";
    double delta = 0.15;
    long long maxIndex = 1;
    bool indicator = false;
    double thetaMin = 0, thetaMax = 0;
    int thetaSteps = 0;
    std::string fn;
    double x = 0, re = 0, im = 0;
    std::string format = "json";
    std::string outputPath;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "pi", "3pi/4", "0.5pi", "pi/2" or plain decimal radians.
double parse_theta(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s += c;
    std::size_t at = s.find("pi");
    if (at == std::string::npos) {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw domain_error("cannot parse angle '" + text + "'");
        return v;
    }
    double num = 1.0, den = 1.0;
    if (at > 0) num = std::stod(s.substr(0, at));
    std::string rest = s.substr(at + 2);
    if (!rest.empty()) {
        if (rest[0] != '/') throw domain_error("cannot parse angle '" + text + "'");
        den = std::stod(rest.substr(1));
    }
    return num * PI / den;
}

Precision parse_precision(const std::string& s) {
    if (s == "standard") return Precision::standard;
    if (s == "extended") return Precision::extended;
    throw domain_error("precision must be standard or extended");
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.outputPath.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(cfg.outputPath, std::ios::binary);
    if (!out) throw domain_error("cannot open output file " + cfg.outputPath);
    out << text;
}

// The (+-1, 0) slope gives back the three-sphere, where the relative
// invariant has no hyperbolic asymptotics; reject it up front.
bool excluded_filling(const RunConfig& cfg) {
    return cfg.q == 0 && (cfg.p == 1 || cfg.p == -1);
}

int cmd_rt(const RunConfig& cfg) {
    auto pres = make_presentation(cfg.p, cfg.q, cfg.a0);
    Precision prec = parse_precision(cfg.precision);
    RtMode mode;
    if (cfg.mode == "raw") mode = RtMode::raw;
    else if (cfg.mode == "symmetrized") mode = RtMode::symmetrized;
    else throw domain_error("mode must be raw or symmetrized");

    int m0 = cfg.m0;
    if (m0 < 0) {
        double theta = parse_theta(cfg.theta);
        if (!(theta > 0) || !(theta < 2 * PI))
            throw domain_error("theta must lie in (0, 2pi)");
        ColorBranch branch = cfg.branch == "plus" ? ColorBranch::plus
                                                  : ColorBranch::minus;
        m0 = choose_color(cfg.r, theta, branch);
    }
    InvariantValue val = rt_invariant(cfg.r, pres, m0, mode, prec);
    double thetaRow = make_color(cfg.r, m0).theta();

    if (cfg.format == "csv") {
        std::string out =
            "p,q,a0,r,m0,theta,re,im,term_count,max_term_magnitude,"
            "cancellation_estimate\n";
        out += std::to_string(cfg.p) + "," + std::to_string(cfg.q) + "," +
               std::to_string(cfg.a0) + "," + std::to_string(cfg.r) + "," +
               std::to_string(m0) + "," + fmt17(thetaRow) + "," +
               fmt17(val.value.real()) + "," + fmt17(val.value.imag()) + "," +
               std::to_string(val.termCount) + "," +
               fmt17(val.maxTermMagnitude) + "," +
               fmt17(val.cancellationEstimate) + "\n";
        emit(cfg, out);
    } else {
        ordered_json doc;
        doc["p"] = cfg.p;
        doc["q"] = cfg.q;
        doc["a0"] = cfg.a0;
        doc["r"] = cfg.r;
        doc["m0"] = m0;
        doc["theta"] = thetaRow;
        doc["re"] = val.value.real();
        doc["im"] = val.value.imag();
        doc["term_count"] = val.termCount;
        doc["max_term_magnitude"] = val.maxTermMagnitude;
        doc["cancellation_estimate"] = val.cancellationEstimate;
        emit(cfg, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_geom(const RunConfig& cfg) {
    auto pres = make_presentation(cfg.p, cfg.q, cfg.a0);
    std::vector<double> grid;
    if (cfg.thetaSteps > 0) {
        if (!(cfg.thetaMin > 0) || !(cfg.thetaMax < 2 * PI) ||
            !(cfg.thetaMin <= cfg.thetaMax))
            throw domain_error("theta grid must lie in (0, 2pi), min <= max");
        for (int i = 0; i < cfg.thetaSteps; ++i)
            grid.push_back(cfg.thetaSteps == 1
                               ? cfg.thetaMin
                               : cfg.thetaMin + (cfg.thetaMax - cfg.thetaMin) *
                                                    i / (cfg.thetaSteps - 1));
    } else {
        double theta = parse_theta(cfg.theta);
        if (!(theta > 0) || !(theta < 2 * PI))
            throw domain_error("theta must lie in (0, 2pi)");
        grid.push_back(theta);
    }
    std::vector<ConeGeometry> rows = cone_family(pres, grid);

    if (cfg.format == "csv") {
        std::string out =
            "theta,x0_re,x0_im,y0_re,y0_im,vol,cs,hess_det_re,hess_det_im,"
            "h_m_re,h_m_im,h_l_re,h_l_im,core_length,gluing_residual,"
            "vol_decreasing\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const ConeGeometry& g = rows[i];
            int dec = i == 0 || rows[i].vol < rows[i - 1].vol ? 1 : 0;
            out += fmt17(g.theta) + "," + fmt17(g.x0c.real()) + "," +
                   fmt17(g.x0c.imag()) + "," + fmt17(g.y0c.real()) + "," +
                   fmt17(g.y0c.imag()) + "," + fmt17(g.vol) + "," +
                   fmt17(g.cs) + "," + fmt17(g.hessDet.real()) + "," +
                   fmt17(g.hessDet.imag()) + "," + fmt17(g.Hm.real()) + "," +
                   fmt17(g.Hm.imag()) + "," + fmt17(g.Hl.real()) + "," +
                   fmt17(g.Hl.imag()) + "," + fmt17(g.coreLength) + "," +
                   fmt17(g.gluingResidual) + "," + std::to_string(dec) + "\n";
        }
        emit(cfg, out);
    } else {
        ordered_json doc;
        doc["rows"] = ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const ConeGeometry& g = rows[i];
            ordered_json j;
            j["theta"] = g.theta;
            j["x0_re"] = g.x0c.real();
            j["x0_im"] = g.x0c.imag();
            j["y0_re"] = g.y0c.real();
            j["y0_im"] = g.y0c.imag();
            j["vol"] = g.vol;
            j["cs"] = g.cs;
            j["hess_det_re"] = g.hessDet.real();
            j["hess_det_im"] = g.hessDet.imag();
            j["h_m_re"] = g.Hm.real();
            j["h_m_im"] = g.Hm.imag();
            j["h_l_re"] = g.Hl.real();
            j["h_l_im"] = g.Hl.imag();
            j["core_length"] = g.coreLength;
            j["gluing_residual"] = g.gluingResidual;
            j["vol_decreasing"] =
                int(i == 0 || rows[i].vol < rows[i - 1].vol ? 1 : 0);
            doc["rows"].push_back(std::move(j));
        }
        emit(cfg, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    auto pres = make_presentation(cfg.p, cfg.q, cfg.a0);
    double theta = parse_theta(cfg.theta);
    if (!(theta > 0) || !(theta < 2 * PI))
        throw domain_error("theta must lie in (0, 2pi)");
    if (cfg.rMin % 2 == 0 || cfg.rMax % 2 == 0 || cfg.rMin > cfg.rMax)
        throw domain_error("level range must be odd, r-min <= r-max");
    if (cfg.rStep < 2 || cfg.rStep % 2 != 0)
        throw domain_error("r-step must be a positive even number");
    std::vector<int> rList;
    for (int r = cfg.rMin; r <= cfg.rMax; r += cfg.rStep) rList.push_back(r);
    ColorBranch branch = cfg.branch == "plus" ? ColorBranch::plus
                                              : ColorBranch::minus;
    AsymptoticReport rep = verify_volume_conjecture(
        pres, theta, rList, branch, parse_precision(cfg.precision));
    emit(cfg, cfg.format == "csv" ? report_csv(rep) : report_json(rep));
    return 0;
}

int cmd_fourier_check(const RunConfig& cfg) {
    auto pres = make_presentation(cfg.p, cfg.q, cfg.a0);
    double theta = parse_theta(cfg.theta);
    if (!(theta > 0) || !(theta < 2 * PI))
        throw domain_error("theta must lie in (0, 2pi)");
    QuadratureSpec quad;
    quad.delta = cfg.delta;
    PoissonCheck pc =
        poisson_check(pres, theta, cfg.r, cfg.maxIndex, quad, cfg.indicator);

    if (cfg.format == "csv") {
        std::string out = "lhs_re,lhs_im,rhs_re,rhs_im,gap\n";
        out += fmt17(pc.lhs.real()) + "," + fmt17(pc.lhs.imag()) + "," +
               fmt17(pc.rhs.real()) + "," + fmt17(pc.rhs.imag()) + "," +
               fmt17(pc.gap) + "\n";
        emit(cfg, out);
    } else {
        ordered_json doc;
        doc["p"] = cfg.p;
        doc["q"] = cfg.q;
        doc["a0"] = cfg.a0;
        doc["theta"] = theta;
        doc["r"] = cfg.r;
        doc["max_index"] = cfg.maxIndex;
        doc["indicator"] = cfg.indicator;
        doc["lhs_re"] = pc.lhs.real();
        doc["lhs_im"] = pc.lhs.imag();
        doc["rhs_re"] = pc.rhs.real();
        doc["rhs_im"] = pc.rhs.imag();
        doc["gap"] = pc.gap;
        emit(cfg, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_specfun(const RunConfig& cfg) {
    cplx z{cfg.re, cfg.im};
    cplx value;
    double inRe = cfg.re, inIm = cfg.im;
    if (cfg.fn == "lobachevsky") {
        value = cplx(lobachevsky(cfg.x), 0.0);
        inRe = cfg.x;
        inIm = 0.0;
    } else if (cfg.fn == "dilog") {
        value = dilog(z);
    } else if (cfg.fn == "qdilog") {
        value = quantum_dilog(cfg.r, z);
    } else {
        throw domain_error("fn must be lobachevsky, dilog or qdilog");
    }

    if (cfg.format == "csv") {
        std::string out = "fn,input_re,input_im,value_re,value_im\n";
        out += cfg.fn + "," + fmt17(inRe) + "," + fmt17(inIm) + "," +
               fmt17(value.real()) + "," + fmt17(value.imag()) + "\n";
        emit(cfg, out);
    } else {
        ordered_json doc;
        doc["fn"] = cfg.fn;
        doc["input_re"] = inRe;
        doc["input_im"] = inIm;
        doc["value_re"] = value.real();
        doc["value_im"] = value.imag();
        emit(cfg, doc.dump(2) + "\n");
    }
    return 0;
}

}

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Quantum invariants and cone geometry of figure-eight "
                 "fillings"};
    app.set_config("--config", "", "flat key=value config file; flags override");
    app.require_subcommand(1);

    app.add_option("--p", cfg.p, "filling numerator");
    app.add_option("--q", cfg.q, "filling denominator");
    app.add_option("--a0", cfg.a0, "chain framing of the zeroth component");
    app.add_option("--theta", cfg.theta,
                   "cone angle: decimal radians or pi forms like pi, 3pi/4");
    app.add_option("--r", cfg.r, "level (odd)");
    app.add_option("--m0", cfg.m0, "color of the relative component");
    app.add_option("--r-min", cfg.rMin, "sweep start level");
    app.add_option("--r-max", cfg.rMax, "sweep end level");
    app.add_option("--r-step", cfg.rStep, "sweep level step (even)");
    app.add_option("--mode", cfg.mode, "rt mode: raw or symmetrized");
    app.add_option("--branch", cfg.branch, "color rounding branch: minus or plus");
    app.add_option("--precision", cfg.precision, "standard or extended");
    app.add_option("--delta", cfg.delta, "bump collar width");
    app.add_option("--max-index", cfg.maxIndex, "largest resummed index");
    app.add_flag("--indicator", cfg.indicator,
                 "replace the smooth bump by the sharp indicator");
    app.add_option("--theta-min", cfg.thetaMin, "grid start angle");
    app.add_option("--theta-max", cfg.thetaMax, "grid end angle");
    app.add_option("--theta-steps", cfg.thetaSteps, "grid size");
    app.add_option("--fn", cfg.fn, "special function: lobachevsky, dilog, qdilog");
    app.add_option("--x", cfg.x, "real argument");
    app.add_option("--re", cfg.re, "real part of the argument");
    app.add_option("--im", cfg.im, "imaginary part of the argument");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--output", cfg.outputPath, "write the report here instead of stdout");

    CLI::App* rt = app.add_subcommand("rt", "one relative invariant value");
    CLI::App* geom = app.add_subcommand("geom", "cone geometry at an angle or grid");
    CLI::App* verify = app.add_subcommand("verify", "asymptotic sweep against the prediction");
    CLI::App* fourier = app.add_subcommand("fourier-check", "Poisson resummation gap");
    CLI::App* specfun = app.add_subcommand("specfun", "evaluate a special function");
    for (CLI::App* sub : {rt, geom, verify, fourier, specfun})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(rt) || app.got_subcommand(geom) ||
            app.got_subcommand(verify) || app.got_subcommand(fourier)) {
            if (excluded_filling(cfg)) {
                std::fprintf(stderr,
                             "error: the trivial filling (p, q) = (%lld, 0) "
                             "gives the three-sphere and is excluded; pick a "
                             "slope with (p, q) != (+-1, 0)\n",
                             cfg.p);
                return 2;
            }
        }
        if (app.got_subcommand(rt)) {
            if (cfg.r <= 0) throw domain_error("rt needs --r");
            if (cfg.m0 < 0 && cfg.theta.empty())
                throw domain_error("rt needs --m0 or --theta");
            return cmd_rt(cfg);
        }
        if (app.got_subcommand(geom)) {
            if (cfg.theta.empty() && cfg.thetaSteps <= 0)
                throw domain_error("geom needs --theta or a theta grid");
            return cmd_geom(cfg);
        }
        if (app.got_subcommand(verify)) {
            if (cfg.theta.empty()) throw domain_error("verify needs --theta");
            return cmd_verify(cfg);
        }
        if (app.got_subcommand(fourier)) {
            if (cfg.theta.empty() || cfg.r <= 0)
                throw domain_error("fourier-check needs --theta and --r");
            return cmd_fourier_check(cfg);
        }
        if (cfg.fn.empty()) throw domain_error("specfun needs --fn");
        return cmd_specfun(cfg);
    } catch (const hypothesis_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
