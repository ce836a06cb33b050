#include "kdvlab/json_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace kdvlab {

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::boolean;
    v.b_ = b;
    return v;
}
JsonValue JsonValue::integer(long long i) {
    JsonValue v;
    v.kind_ = Kind::integer;
    v.i_ = i;
    return v;
}
JsonValue JsonValue::number(double d) {
    JsonValue v;
    v.kind_ = Kind::number;
    v.d_ = d;
    return v;
}
JsonValue JsonValue::string(std::string s) {
    JsonValue v;
    v.kind_ = Kind::string;
    v.s_ = std::move(s);
    return v;
}
JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::array;
    return v;
}
JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::object;
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    if (kind_ != Kind::object) throw std::logic_error("set on non-object JSON value");
    obj_.emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    if (kind_ != Kind::array) throw std::logic_error("push on non-array JSON value");
    arr_.push_back(std::move(v));
    return *this;
}

std::string format_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    auto pad = [&](int d) {
        if (indent > 0) out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (kind_) {
        case Kind::null: out += "null"; break;
        case Kind::boolean: out += b_ ? "true" : "false"; break;
        case Kind::integer: out += std::to_string(i_); break;
        case Kind::number: out += format_double(d_); break;
        case Kind::string: escape_into(out, s_); break;
        case Kind::array: {
            if (arr_.empty()) {
                out += "[]";
                break;
            }
            out += '[';
            for (std::size_t i = 0; i < arr_.size(); ++i) {
                if (indent > 0) out += '\n';
                pad(depth + 1);
                arr_[i].write(out, indent, depth + 1);
                if (i + 1 < arr_.size()) out += ',';
            }
            if (indent > 0) out += '\n';
            pad(depth);
            out += ']';
            break;
        }
        case Kind::object: {
            if (obj_.empty()) {
                out += "{}";
                break;
            }
            out += '{';
            for (std::size_t i = 0; i < obj_.size(); ++i) {
                if (indent > 0) out += '\n';
                pad(depth + 1);
                escape_into(out, obj_[i].first);
                out += indent > 0 ? ": " : ":";
                obj_[i].second.write(out, indent, depth + 1);
                if (i + 1 < obj_.size()) out += ',';
            }
            if (indent > 0) out += '\n';
            pad(depth);
            out += '}';
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

JsonValue poly_to_json(const Poly& p) {
    JsonValue arr = JsonValue::array();
    for (const auto& [mono, coef] : p.terms()) {
        JsonValue term = JsonValue::object();
        JsonValue exps = JsonValue::object();
        for (int i = 0; i < kSymCount; ++i)
            if (mono.e[i] != 0) exps.set(kSymNames[i], JsonValue::integer(mono.e[i]));
        term.set("exponents", std::move(exps));
        term.set("coefficient", JsonValue::string(rational_to_string(coef)));
        arr.push(std::move(term));
    }
    return arr;
}

Poly poly_from_json_text(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    Poly p;
    for (const auto& term : doc) {
        Monomial m;
        for (auto it = term.at("exponents").begin(); it != term.at("exponents").end(); ++it) {
            auto sym = sym_from_name(it.key());
            if (!sym) throw std::invalid_argument("unknown symbol " + it.key());
            m.e[*sym] = static_cast<int8_t>(it.value().get<int>());
        }
        p += Poly::monomial(m, rational_from_string(term.at("coefficient").get<std::string>()));
    }
    return p;
}

JsonValue equation_to_json(const EquationSpec& eq) {
    JsonValue root = JsonValue::object();
    root.set("order", JsonValue::integer(eq.order));
    JsonValue terms = JsonValue::array();
    for (const auto& t : eq.terms) {
        JsonValue term = JsonValue::object();
        term.set("coefficient", JsonValue::string(rational_to_string(t.coeff)));
        term.set("alpha_power", JsonValue::integer(t.alpha_pow));
        term.set("beta_power", JsonValue::integer(t.beta_pow));
        if (t.is_time) {
            term.set("time_derivative", JsonValue::boolean(true));
        } else {
            JsonValue f = JsonValue::array();
            for (int d : t.factors) f.push(JsonValue::integer(d));
            term.set("factors", std::move(f));
        }
        terms.push(std::move(term));
    }
    root.set("terms", std::move(terms));
    return root;
}

JsonValue system_to_json(const ConditionSystem& sys) {
    JsonValue root = JsonValue::object();
    root.set("family", JsonValue::string(family_name(sys.family)));
    root.set("order", JsonValue::integer(sys.order));
    JsonValue unknowns = JsonValue::array();
    for (Sym s : sys.unknowns) unknowns.push(JsonValue::string(kSymNames[s]));
    root.set("unknowns", std::move(unknowns));

    JsonValue conds = JsonValue::array();
    for (const Poly& c : sys.conditions) conds.push(poly_to_json(c));
    root.set("conditions", std::move(conds));

    JsonValue raw = JsonValue::array();
    BasisFamily bf = basis_family(sys.family);
    for (const auto& rc : sys.raw) {
        JsonValue r = JsonValue::object();
        r.set("basis_monomial", JsonValue::string(rc.source.to_string(bf)));
        r.set("condition", poly_to_json(rc.poly));
        raw.push(std::move(r));
    }
    root.set("raw_conditions", std::move(raw));

    JsonValue dups = JsonValue::array();
    for (auto [i, j] : sys.duplicates) {
        JsonValue pair = JsonValue::array();
        pair.push(JsonValue::integer(i));
        pair.push(JsonValue::integer(j));
        dups.push(std::move(pair));
    }
    root.set("duplicate_pairs", std::move(dups));

    if (sys.has_volume_constraint)
        root.set("volume_constraint", JsonValue::string(volume_constraint(sys.family).formula));
    if (!is_elliptic(sys.family)) {
        JsonValue cosh_form = JsonValue::array();
        for (const Poly& c : cosh_basis_conditions(sys)) cosh_form.push(poly_to_json(c));
        root.set("cosh_basis_conditions", std::move(cosh_form));
    }
    return root;
}

JsonValue params_to_json(const SolutionParams& p) {
    JsonValue o = JsonValue::object();
    o.set("family", JsonValue::string(family_name(p.family)));
    o.set("order", JsonValue::integer(p.order));
    o.set("A", JsonValue::number(p.amplitude));
    o.set("B", JsonValue::number(p.inverse_width));
    o.set("v", JsonValue::number(p.velocity));
    o.set("D", JsonValue::number(p.offset));
    if (is_elliptic(p.family)) o.set("m", JsonValue::number(p.elliptic_m));
    o.set("branch", JsonValue::string(branch_name(p.branch)));
    return o;
}

JsonValue verdict_to_json(const ConsistencyVerdict& v, double alpha, double beta) {
    JsonValue o = JsonValue::object();
    o.set("family", JsonValue::string(family_name(v.family)));
    o.set("order", JsonValue::integer(v.order));
    o.set("alpha", JsonValue::number(alpha));
    o.set("beta", JsonValue::number(beta));
    o.set("verdict", JsonValue::string(verdict_name(v.kind)));
    if (v.kind == VerdictKind::family) o.set("dimension", JsonValue::integer(v.dimension));
    JsonValue sols = JsonValue::array();
    for (const auto& s : v.solutions) sols.push(params_to_json(s));
    o.set("solutions", std::move(sols));

    if (v.scan) {
        const ScanCertificate& c = *v.scan;
        JsonValue s = JsonValue::object();
        JsonValue region = JsonValue::object();
        region.set("p", JsonValue::array()
                            .push(JsonValue::number(c.p_lo))
                            .push(JsonValue::number(c.p_hi)));
        region.set("q", JsonValue::array()
                            .push(JsonValue::number(c.q_lo))
                            .push(JsonValue::number(c.q_hi)));
        region.set("v", JsonValue::array()
                            .push(JsonValue::number(c.v_lo))
                            .push(JsonValue::number(c.v_hi)));
        if (c.nm > 1)
            region.set("m", JsonValue::array()
                                .push(JsonValue::number(c.m_lo))
                                .push(JsonValue::number(c.m_hi)));
        region.set("negative_amplitude_scanned", JsonValue::boolean(c.negative_amplitude_scanned));
        s.set("region", std::move(region));
        s.set("note", JsonValue::string("p = alpha*A, q = beta*B^2; scale-free in alpha, beta"));
        JsonValue grid = JsonValue::array();
        grid.push(JsonValue::integer(c.np));
        grid.push(JsonValue::integer(c.nq));
        grid.push(JsonValue::integer(c.nv));
        if (c.nm > 1) grid.push(JsonValue::integer(c.nm));
        s.set("grid", std::move(grid));
        s.set("grid_min_ssq", JsonValue::number(c.grid_min_ssq));
        s.set("refined_min_ssq", JsonValue::number(c.refined_min_ssq));
        JsonValue arg = JsonValue::object();
        arg.set("p", JsonValue::number(c.argmin_p));
        arg.set("q", JsonValue::number(c.argmin_q));
        arg.set("v", JsonValue::number(c.argmin_v));
        if (c.nm > 1) arg.set("m", JsonValue::number(c.argmin_m));
        s.set("argmin", std::move(arg));
        s.set("threshold", JsonValue::number(c.threshold));
        o.set("scan_certificate", std::move(s));
    }
    if (v.elimination) {
        const EliminationCertificate& c = *v.elimination;
        JsonValue e = JsonValue::object();
        e.set("completed", JsonValue::boolean(c.completed));
        if (c.completed) {
            e.set("eliminated_polynomial", JsonValue::string(c.eliminated));
            e.set("positive_root_count", JsonValue::integer(c.positive_root_count));
        }
        e.set("note", JsonValue::string(c.note));
        o.set("elimination_certificate", std::move(e));
    }
    if (!v.warnings.empty()) {
        JsonValue w = JsonValue::array();
        for (const auto& s : v.warnings) w.push(JsonValue::string(s));
        o.set("warnings", std::move(w));
    }
    return o;
}

std::vector<SolutionParams> params_from_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    auto doc = nlohmann::json::parse(is);
    const auto& sols = doc.contains("solutions") ? doc.at("solutions") : doc;
    std::vector<SolutionParams> out;
    int order = doc.contains("order") ? doc.at("order").get<int>() : 1;
    for (const auto& s : sols) {
        SolutionParams p;
        p.family = family_from_name(s.at("family").get<std::string>());
        p.order = s.contains("order") ? s.at("order").get<int>() : order;
        p.amplitude = s.at("A").get<double>();
        p.inverse_width = s.at("B").get<double>();
        p.velocity = s.at("v").get<double>();
        p.offset = s.contains("D") ? s.at("D").get<double>() : 0.0;
        p.elliptic_m = s.contains("m") ? s.at("m").get<double>() : 0.0;
        std::string br = s.contains("branch") ? s.at("branch").get<std::string>() : "kdv_family";
        p.branch = br == "z1" ? Branch::root_z1 : br == "z2" ? Branch::root_z2 : Branch::family_parameter;
        out.push_back(p);
    }
    return out;
}

} // namespace kdvlab
