#include "tgwa/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace tgwa {

const std::string& TomlValue::as_string() const {
    if (auto* s = std::get_if<std::string>(&v)) return *s;
    fail(errc::config_parse, "expected a string value");
}

long TomlValue::as_int() const {
    if (auto* i = std::get_if<long>(&v)) return *i;
    fail(errc::config_parse, "expected an integer value");
}

std::vector<long> TomlValue::as_ints() const {
    if (auto* a = std::get_if<std::vector<long>>(&v)) return *a;
    fail(errc::config_parse, "expected an integer array");
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

TomlValue parse_value(const std::string& raw, int line_no) {
    std::string s = strip(raw);
    if (s.empty()) fail(errc::config_parse, "empty value on line " + std::to_string(line_no));
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            fail(errc::config_parse, "unterminated string on line " + std::to_string(line_no));
        return TomlValue{s.substr(1, s.size() - 2)};
    }
    if (s.front() == '[') {
        if (s.back() != ']')
            fail(errc::config_parse, "unterminated array on line " + std::to_string(line_no));
        std::string inner = s.substr(1, s.size() - 2);
        std::vector<std::string> parts;
        std::string cur;
        bool in_str = false;
        for (char c : inner) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!strip(cur).empty()) parts.push_back(cur);
        bool strings = false;
        for (auto& p : parts)
            if (strip(p).size() && strip(p).front() == '"') strings = true;
        if (strings) {
            std::vector<std::string> out;
            for (auto& p : parts) {
                std::string q = strip(p);
                if (q.size() < 2 || q.front() != '"' || q.back() != '"')
                    fail(errc::config_parse, "bad string array on line " + std::to_string(line_no));
                out.push_back(q.substr(1, q.size() - 2));
            }
            return TomlValue{out};
        }
        std::vector<long> out;
        for (auto& p : parts) out.push_back(std::stol(strip(p)));
        return TomlValue{out};
    }
    // integer (possibly negative)
    try {
        size_t used = 0;
        long val = std::stol(s, &used);
        if (used == s.size()) return TomlValue{val};
    } catch (...) {
    }
    fail(errc::config_parse, "cannot parse value '" + s + "' on line " + std::to_string(line_no));
}

} // namespace

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = std::string::npos;
        bool in_str = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                hash = i;
                break;
            }
        }
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string s = strip(line);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(errc::config_parse, "bad section header on line " + std::to_string(line_no));
            section = strip(s.substr(1, s.size() - 2));
            table[section];
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            fail(errc::config_parse, "expected key = value on line " + std::to_string(line_no));
        std::string key = strip(s.substr(0, eq));
        table[section][key] = parse_value(s.substr(eq + 1), line_no);
    }
    return table;
}

namespace {

const TomlValue* find(const TomlTable& t, const std::string& section, const std::string& key) {
    auto sit = t.find(section);
    if (sit == t.end()) return nullptr;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    return &kit->second;
}

} // namespace

Session load_session(const std::string& config_text) {
    TomlTable t = parse_toml(config_text);
    Session s;
    long order = 1;
    if (const auto* v = find(t, "algebra", "N")) order = v->as_int();
    if (order < 1) fail(errc::config_parse, "cyclotomic order must be positive");
    s.env = ParameterEnv(static_cast<int>(order));
    s.algebra_preset = "qwa2";
    if (const auto* v = find(t, "algebra", "preset")) s.algebra_preset = v->as_string();
    int n = 2;
    if (const auto* v = find(t, "algebra", "n")) n = static_cast<int>(v->as_int());

    auto pit = t.find("algebra.params");
    if (pit != t.end()) {
        for (const auto& [name, val] : pit->second) {
            std::string expr = val.as_string();
            if (expr == "transcendental") s.env.declare_transcendental(name);
            else s.env.bind(name, parse_scalar(expr, s.env.order()));
        }
    }

    if (s.algebra_preset == "qwa2") {
        s.sys = QwaSystem::make(s.env, 2);
    } else if (s.algebra_preset == "qwa") {
        s.sys = QwaSystem::make(s.env, n);
    } else if (s.algebra_preset == "sign_flip") {
        // fixture presentation; sys left in a rank-two shell for the CLI
        s.sys = QwaSystem{};
        s.sys.order = s.env.order();
        s.sys.pres = sign_flip_presentation();
    } else if (s.algebra_preset == "ccr") {
        // Q-matrix from bindings Qij
        std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n, Scalar::integer(1)));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                std::string nm = "Q" + std::to_string(i) + std::to_string(j);
                q[i - 1][j - 1] = s.env.value(nm);
            }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) q[j][i] = q[i][j].inverse();
        s.sys = QwaSystem{};
        s.sys.order = s.env.order();
        s.sys.pres = ccr_presentation(q);
    } else {
        fail(errc::config_parse, "unknown algebra preset '" + s.algebra_preset + "'");
    }

    if (const auto* v = find(t, "module", "window")) s.window = v->as_int();
    if (s.window < 0) fail(errc::config_parse, "window must be nonnegative");
    if (const auto* v = find(t, "module", "rho")) s.opts.rho = s.env.eval(v->as_string());
    if (const auto* v = find(t, "module", "mu")) s.opts.mu = s.env.eval(v->as_string());
    if (const auto* v = find(t, "module", "fixture")) s.fixture = v->as_string();
    const auto* ba = find(t, "module", "basis_a");
    const auto* bb = find(t, "module", "basis_b");
    if (ba && bb) {
        auto a = ba->as_ints(), b = bb->as_ints();
        if (a.size() != 2 || b.size() != 2) fail(errc::config_parse, "basis_a/basis_b need two entries");
        s.opts.rank2_basis = std::make_pair(std::array<long, 2>{a[0], a[1]}, std::array<long, 2>{b[0], b[1]});
    }

    s.point_preset = "n0";
    if (const auto* v = find(t, "point", "preset")) s.point_preset = v->as_string();
    auto eval_key = [&](const std::string& key, const char* fallback) {
        if (const auto* v = find(t, "point", key)) return s.env.eval(v->as_string());
        return s.env.eval(fallback);
    };
    if (s.algebra_preset == "qwa2" || s.algebra_preset == "qwa") {
        if (s.point_preset == "n0") s.point = s.sys.point_n0();
        else if (s.point_preset == "n1") s.point = s.sys.point_n1(eval_key("lam", "lam"));
        else if (s.point_preset == "n2") s.point = s.sys.point_n2(eval_key("lam", "lam"));
        else if (s.point_preset == "generic")
            s.point = s.sys.point_generic(eval_key("a1", "a1"), eval_key("a2", "a2"));
        else if (s.point_preset == "raw") {
            const auto* v = find(t, "point", "coords");
            if (!v) fail(errc::config_parse, "raw point needs coords");
            std::vector<std::string> exprs;
            if (auto* arr = std::get_if<std::vector<std::string>>(&v->v)) exprs = *arr;
            else fail(errc::config_parse, "coords must be a string array");
            for (const auto& e : exprs) s.point.alpha.push_back(s.env.eval(e));
        } else {
            fail(errc::config_parse, "unknown point preset '" + s.point_preset + "'");
        }
    }
    return s;
}

Session load_session_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::config_parse, "cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_session(buf.str());
}

} // namespace tgwa
