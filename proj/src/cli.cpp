#include "tgwa/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace tgwa {

namespace {

using nlohmann::json;

json lattice_json(const Lattice& l) {
    json rows = json::array();
    for (int i = 0; i < l.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < l.ambient_rank(); ++j) row.push_back(l.basis().at(i, j).get_str());
        rows.push_back(row);
    }
    return json{{"ambient_rank", l.ambient_rank()}, {"rank", l.rank()}, {"basis", rows}};
}

json ray_json(const RayIntervals& rays) {
    json out = json::array();
    for (const auto& r : rays.rays) {
        json j;
        j["lo"] = r.lo ? json(*r.lo) : json(nullptr);
        j["hi"] = r.hi ? json(*r.hi) : json(nullptr);
        out.push_back(j);
    }
    return out;
}

json report_json(const VerificationReport& r) {
    json j;
    j["relations_ok"] = r.relations_ok();
    json rf = json::array();
    for (const auto& f : r.relation_failures)
        rf.push_back(json{{"relation", f.relation}, {"at", f.at.str()}, {"difference", f.difference.str()}});
    j["relation_failures"] = rf;
    j["grading_ok"] = r.grading_ok;
    j["simplicity"] = r.simplicity == Simplicity::Simple
                          ? "simple"
                          : (r.simplicity == Simplicity::NotSimple ? "not_simple" : "undecided");
    if (!r.simplicity_witness.empty()) j["simplicity_witness"] = r.simplicity_witness;
    json ib = json::array();
    for (const auto& b : r.inner_breaks)
        ib.push_back(json{{"support", json::array({b.support[0], b.support[1]})}, {"direction", b.direction}});
    j["inner_breaks"] = ib;
    json pb = json::array();
    for (const auto& b : r.proper_inner_breaks)
        pb.push_back(json{{"support", json::array({b.support[0], b.support[1]})},
                          {"degree", json::array({b.degree[0], b.degree[1]})}});
    j["proper_inner_breaks"] = pb;
    return j;
}

WeightModuleSpec session_module(const Session& s, bool oracle) {
    if (s.fixture == "sign_flip") return fixture_sign_flip();
    if (s.fixture == "pib_n0") return fixture_inner_break_at_n0(s.sys);
    if (!s.fixture.empty()) fail(errc::config_parse, "unknown fixture '" + s.fixture + "'");
    if (oracle) return build_generic_induced(s.point, s.sys, s.opts);
    CaseTag tag = classify_case(s.point, s.sys);
    return build_module(tag, s.point, s.sys, s.opts);
}

} // namespace

int run_cli(const CliOptions& opts, std::ostream& out_stream, std::ostream& err) {
    std::ostringstream buffer;
    int status = 0;
    try {
        Session s = load_session_file(opts.config_path);
        long window = opts.window >= 0 ? opts.window : s.window;
        const std::string& cmd = opts.subcommand;

        if (cmd == "classify") {
            CaseTag tag = classify_case(s.point, s.sys);
            if (opts.format == "json") buffer << json{{"case", case_tag_name(tag)}}.dump(2) << "\n";
            else buffer << case_tag_name(tag) << "\n";
        } else if (cmd == "orbit") {
            GammaSequence gam = gamma_sequence(s.point, s.sys);
            json j;
            json gj = json::array();
            for (const auto& g : gam.gamma) gj.push_back(g.str());
            j["gamma"] = gj;
            json breaks = json::array();
            for (int i = 1; i <= s.sys.n(); ++i) {
                BreakSolutions b = break_exponents(s.point, i, s.sys);
                json bj;
                bj["j"] = i;
                switch (b.kind) {
                case BreakSolutions::Kind::None: bj["solutions"] = "none"; break;
                case BreakSolutions::Kind::All: bj["solutions"] = "all"; break;
                case BreakSolutions::Kind::Single:
                    bj["solutions"] = "single";
                    bj["value"] = b.value;
                    break;
                case BreakSolutions::Kind::Progression:
                    bj["solutions"] = "progression";
                    bj["value"] = b.value;
                    bj["period"] = b.period;
                    break;
                }
                breaks.push_back(bj);
            }
            j["breaks"] = breaks;
            j["isotropy"] = lattice_json(isotropy(s.point, s.sys));
            if (opts.format == "json") buffer << j.dump(2) << "\n";
            else {
                buffer << "gamma:";
                for (const auto& g : gam.gamma) buffer << " " << g.str() << ";";
                buffer << "\n";
                for (const auto& bj : breaks) {
                    buffer << "breaks j=" << bj.at("j") << ": " << bj.at("solutions").get<std::string>();
                    if (bj.contains("value")) buffer << " at " << bj.at("value");
                    if (bj.contains("period")) buffer << " mod " << bj.at("period");
                    buffer << "\n";
                }
                buffer << "isotropy " << isotropy(s.point, s.sys).str() << "\n";
            }
        } else if (cmd == "gtilde") {
            RayIntervals rays = g_tilde(s.point, s.sys);
            if (opts.format == "json") buffer << json{{"g_tilde", ray_json(rays)}}.dump(2) << "\n";
            else {
                for (size_t i = 0; i < rays.rays.size(); ++i) {
                    buffer << "axis " << i + 1 << ": ["
                           << (rays.rays[i].lo ? std::to_string(*rays.rays[i].lo) : "-inf") << ", "
                           << (rays.rays[i].hi ? std::to_string(*rays.rays[i].hi) : "+inf") << "]\n";
                }
            }
        } else if (cmd == "gm") {
            Lattice gm = g_m(s.point, s.sys);
            if (opts.format == "json") buffer << json{{"g_m", lattice_json(gm)}}.dump(2) << "\n";
            else buffer << gm.str() << "\n";
        } else if (cmd == "bm") {
            BmPresentation bm = bm_presentation(s.point, s.sys);
            json j;
            json basis = json::array();
            for (const auto& row : bm.basis) basis.push_back(json::array({row[0], row[1]}));
            j["basis"] = basis;
            json lam = json::array();
            for (const auto& row : bm.lambda) {
                json r = json::array();
                for (const auto& x : row) r.push_back(x.str());
                lam.push_back(r);
            }
            j["lambda"] = lam;
            j["isotropy"] = lattice_json(bm.isotropy_lattice);
            j["degree_group"] = lattice_json(bm.degree_group);
            bool rou = true;
            for (size_t i = 0; i < bm.lambda.size() && rou; ++i)
                for (size_t k = 0; k < bm.lambda.size() && rou; ++k)
                    if (i != k && !bm.lambda[i][k].root_of_unity_order()) rou = false;
            if (!bm.basis.empty() && rou) {
                TorusDecomposition dec = torus_decompose(bm.lambda, s.sys.order);
                json dj;
                dj["lambda_root"] = dec.lambda_root.str();
                dj["p"] = dec.p;
                dj["laurent_rank"] = dec.laurent_rank;
                json u = json::array();
                for (int i = 0; i < dec.u.rows(); ++i) {
                    json r = json::array();
                    for (int k = 0; k < dec.u.cols(); ++k) r.push_back(dec.u.at(i, k).get_str());
                    u.push_back(r);
                }
                dj["U"] = u;
                json orders = json::array();
                for (long n : dec.torus_orders) orders.push_back(n);
                dj["torus_orders"] = orders;
                j["torus_decomposition"] = dj;
            }
            buffer << j.dump(2) << "\n";
        } else if (cmd == "build") {
            WeightModuleSpec m = session_module(s, opts.use_oracle);
            buffer << module_to_json(m, window) << "\n";
        } else if (cmd == "verify") {
            WeightModuleSpec m;
            if (!opts.in_path.empty()) {
                std::ifstream in(opts.in_path);
                if (!in) fail(errc::config_parse, "cannot open module file " + opts.in_path);
                std::ostringstream mb;
                mb << in.rdbuf();
                std::optional<QwaParams> qwa;
                if (s.algebra_preset == "qwa2" || s.algebra_preset == "qwa") qwa = s.sys.params;
                m = module_from_json(mb.str(), s.sys.pres, qwa, s.sys.order);
            } else {
                m = session_module(s, opts.use_oracle);
            }
            long degree_box = opts.window >= 0 ? opts.window : default_npib_box(m);
            VerificationReport rep = verify_module(m, window, degree_box);
            if (opts.format == "json") buffer << report_json(rep).dump(2) << "\n";
            else buffer << report_text(rep);
            if (!rep.relations_ok() || !rep.grading_ok || !rep.npib_ok()) status = 2;
        } else if (cmd == "diagram") {
            WeightModuleSpec m = session_module(s, opts.use_oracle);
            buffer << emit_dot(m, window);
        } else {
            fail(errc::config_parse, "unknown subcommand '" + cmd + "'");
        }
    } catch (const error& e) {
        err << e.what() << "\n";
        switch (e.code()) {
        case errc::config_parse:
        case errc::parse_error: return 3;
        default: return 4;
        }
    }
    if (!opts.out_path.empty()) {
        std::ofstream f(opts.out_path);
        if (!f) {
            err << "cannot write to " << opts.out_path << "\n";
            return 3;
        }
        f << buffer.str();
    } else {
        out_stream << buffer.str();
    }
    return status;
}

} // namespace tgwa
