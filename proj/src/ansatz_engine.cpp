#include "kdvlab/ansatz_engine.hpp"
#include "kdvlab/special_functions.hpp"

#include <algorithm>
#include <stdexcept>

namespace kdvlab {

const char* family_name(AnsatzFamily f) {
    switch (f) {
        case AnsatzFamily::soliton: return "soliton";
        case AnsatzFamily::cnoidal: return "cnoidal";
        case AnsatzFamily::superposition_plus: return "superposition-plus";
        case AnsatzFamily::superposition_minus: return "superposition-minus";
    }
    return "?";
}

AnsatzFamily family_from_name(const std::string& name) {
    if (name == "soliton") return AnsatzFamily::soliton;
    if (name == "cnoidal") return AnsatzFamily::cnoidal;
    if (name == "superposition-plus") return AnsatzFamily::superposition_plus;
    if (name == "superposition-minus") return AnsatzFamily::superposition_minus;
    throw std::invalid_argument("unknown ansatz family: " + name);
}

BasisFamily basis_family(AnsatzFamily f) {
    return f == AnsatzFamily::soliton ? BasisFamily::hyperbolic : BasisFamily::elliptic;
}

bool is_elliptic(AnsatzFamily f) { return f != AnsatzFamily::soliton; }

BasisExpression make_ansatz(AnsatzFamily f) {
    Poly A = Poly::symbol(SymA);
    Poly D = Poly::symbol(SymD);
    switch (f) {
        case AnsatzFamily::soliton:
            return BasisExpression::term(BasisFamily::hyperbolic, {2, 0, 0}, A);
        case AnsatzFamily::cnoidal: {
            BasisExpression e = BasisExpression::term(BasisFamily::elliptic, {2, 0, 0}, A);
            e += BasisExpression::term(BasisFamily::elliptic, {0, 0, 0}, D);
            return e;
        }
        case AnsatzFamily::superposition_plus:
        case AnsatzFamily::superposition_minus: {
            Poly half_A = A.scaled(rat(1, 2));
            Poly cross = half_A * Poly::symbol(SymS);
            if (f == AnsatzFamily::superposition_minus) cross = -cross;
            BasisExpression e = BasisExpression::term(BasisFamily::elliptic, {0, 0, 2}, half_A);
            e += BasisExpression::term(BasisFamily::elliptic, {1, 0, 1}, cross);
            e += BasisExpression::term(BasisFamily::elliptic, {0, 0, 0}, D);
            return e;
        }
    }
    throw std::invalid_argument("unknown ansatz family");
}

namespace {

// Conditions are viewed as vectors over monomials in everything but m, with
// entries that are polynomials in m. Redundant coefficients (the recombined
// duplicates the basis identities produce) are exactly the rows that are
// linearly dependent over the rational-function field Q(m), found by
// fraction-free Gaussian elimination.
using MPoly = std::map<int, Rational>; // exponent of m -> coefficient

struct MRow {
    std::map<Monomial, MPoly> cols;
    bool zero() const { return cols.empty(); }
};

MRow to_mrow(const Poly& p) {
    MRow r;
    for (const auto& [mono, c] : p.terms()) {
        Monomial key = mono;
        int mexp = key.e[SymM];
        key.e[SymM] = 0;
        r.cols[key][mexp] += c;
    }
    for (auto it = r.cols.begin(); it != r.cols.end();) {
        std::erase_if(it->second, [](const auto& kv) { return kv.second == 0; });
        it = it->second.empty() ? r.cols.erase(it) : std::next(it);
    }
    return r;
}

MPoly mpoly_mul(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto& acc = r[ea + eb];
            acc += ca * cb;
        }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

// row := pivot_entry * row - row_entry * pivot (fraction-free elimination).
void mrow_eliminate(MRow& row, const MRow& pivot, const Monomial& col) {
    auto rit = row.cols.find(col);
    if (rit == row.cols.end()) return;
    MPoly re = rit->second;
    MPoly pe = pivot.cols.at(col);
    MRow out;
    for (const auto& [k, v] : row.cols) out.cols[k] = mpoly_mul(pe, v);
    for (const auto& [k, v] : pivot.cols) {
        auto& acc = out.cols[k];
        MPoly sub = mpoly_mul(re, v);
        for (const auto& [e, c] : sub) acc[e] -= c;
    }
    for (auto it = out.cols.begin(); it != out.cols.end();) {
        std::erase_if(it->second, [](const auto& kv) { return kv.second == 0; });
        it = it->second.empty() ? out.cols.erase(it) : std::next(it);
    }
    row = std::move(out);
}

BasisExpression substituted_residual(AnsatzFamily fam, const EquationSpec& eq) {
    BasisFamily bf = basis_family(fam);
    BasisExpression eta = make_ansatz(fam);
    std::vector<BasisExpression> deriv{eta};
    int max_order = 1;
    for (const auto& t : eq.terms)
        for (int f : t.factors) max_order = std::max(max_order, f);
    for (int k = 1; k <= max_order; ++k) deriv.push_back(deriv.back().differentiate());

    BasisExpression residual = BasisExpression::zero(bf);
    for (const auto& t : eq.terms) {
        Poly scale(t.coeff);
        scale = scale * Poly::symbol(SymAlpha, t.alpha_pow) * Poly::symbol(SymBeta, t.beta_pow);
        BasisExpression e(bf);
        if (t.is_time) {
            // traveling frame: eta_t = -v * eta_y
            e = deriv[1];
            scale = scale * (-Poly::symbol(SymV));
        } else {
            e = BasisExpression::term(bf, {0, 0, 0}, Poly::constant(1));
            for (int f : t.factors) e = e * deriv[static_cast<std::size_t>(f)];
        }
        residual += e.scaled(scale);
    }
    return residual;
}

} // namespace

ConditionSystem derive_conditions(AnsatzFamily family, int order) {
    ConditionSystem sys;
    sys.family = family;
    sys.order = order;
    sys.unknowns = is_elliptic(family) ? std::vector<Sym>{SymA, SymB, SymV, SymD}
                                       : std::vector<Sym>{SymA, SymB, SymV};
    sys.has_volume_constraint = is_elliptic(family);

    const EquationSpec& eq = get_equation(order);
    auto collected = substituted_residual(family, eq).collect();
    if (collected.empty()) return sys;

    // Common basis monomial of the residual.
    BasisMonomial bg = collected.front().first;
    for (const auto& [m, p] : collected) {
        bg.a = std::min(bg.a, m.a);
        bg.b = std::min(bg.b, m.b);
        bg.c = std::min(bg.c, m.c);
    }
    // Symbol-monomial factor shared by every coefficient (the loose A*B from
    // the profile and the chain rule); v and D are never part of it.
    Monomial pg = collected.front().second.monomial_gcd();
    for (const auto& [m, p] : collected) {
        Monomial g = p.monomial_gcd();
        for (int i = 0; i < kSymCount; ++i) pg.e[i] = std::min(pg.e[i], g.e[i]);
    }
    pg.e[SymV] = 0;
    pg.e[SymD] = 0;

    for (const auto& [mono, poly] : collected) {
        BasisMonomial shifted{static_cast<int8_t>(mono.a - bg.a),
                              static_cast<int8_t>(mono.b - bg.b),
                              static_cast<int8_t>(mono.c - bg.c)};
        Poly stripped;
        for (const auto& [m, c] : poly.terms()) stripped += Poly::monomial(m / pg, c);
        sys.bracket.emplace_back(shifted, stripped);
        sys.raw.push_back({shifted, domain_stripped(stripped)});
    }

    // Duplicate coefficients (equal after normalization) collapse to one.
    std::vector<Poly> deduped;
    std::vector<int> kept_idx;
    for (int i = 0; i < static_cast<int>(sys.raw.size()); ++i) {
        bool dup = false;
        for (std::size_t j = 0; j < kept_idx.size(); ++j) {
            if (sys.raw[static_cast<std::size_t>(i)].poly == deduped[j]) {
                sys.duplicates.emplace_back(kept_idx[j], i);
                dup = true;
                break;
            }
        }
        if (!dup) {
            deduped.push_back(sys.raw[static_cast<std::size_t>(i)].poly);
            kept_idx.push_back(i);
        }
    }

    // A condition that is Q(m)-linearly dependent on the others vanishes
    // wherever they do (for m in (0,1), away from pivot roots) and is
    // dropped. Sparse conditions are admitted to the basis first so the
    // short B-fixing relations survive as representatives.
    std::vector<std::size_t> scan(deduped.size());
    for (std::size_t i = 0; i < scan.size(); ++i) scan[i] = i;
    std::vector<MRow> rows(deduped.size());
    for (std::size_t i = 0; i < deduped.size(); ++i) rows[i] = to_mrow(deduped[i]);
    std::stable_sort(scan.begin(), scan.end(), [&](std::size_t a, std::size_t b) {
        return rows[a].cols.size() < rows[b].cols.size();
    });
    std::vector<std::pair<MRow, Monomial>> basis; // reduced row + pivot column
    std::vector<bool> keep_flag(deduped.size(), false);
    for (std::size_t idx : scan) {
        MRow r = rows[idx];
        for (const auto& [brow, bcol] : basis) mrow_eliminate(r, brow, bcol);
        if (r.zero()) continue;
        keep_flag[idx] = true;
        basis.emplace_back(r, r.cols.begin()->first);
    }
    for (std::size_t i = 0; i < deduped.size(); ++i)
        if (keep_flag[i]) sys.conditions.push_back(deduped[i]);
    return sys;
}

VolumeRule volume_constraint(AnsatzFamily family) {
    switch (family) {
        case AnsatzFamily::cnoidal:
            return {family, "D = -(A/m) * (E(m)/K(m) + m - 1)"};
        case AnsatzFamily::superposition_plus:
        case AnsatzFamily::superposition_minus:
            return {family, "D = -(A/2) * E(m)/K(m)"};
        case AnsatzFamily::soliton:
            break;
    }
    throw std::invalid_argument("volume constraint: soliton profile has no offset");
}

double volume_offset_factor(AnsatzFamily family, double m) {
    if (!is_elliptic(family))
        throw std::invalid_argument("volume offset: soliton profile has no offset");
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("volume offset: m must lie in (0,1)");
    double ratio = complete_E(m) / complete_K(m);
    if (family == AnsatzFamily::cnoidal) return -(ratio + m - 1.0) / m;
    return -0.5 * ratio;
}

std::vector<Poly> cosh_basis_conditions(const ConditionSystem& system) {
    if (is_elliptic(system.family))
        throw std::invalid_argument("cosh-power form applies to the hyperbolic family only");
    // bracket = sum_i K_i sech^{2i}; multiply by cosh^{2k} and expand
    // cosh^{2j} = ((1 + cosh 2By)/2)^j to get coefficients of cosh(2By)^l.
    int k = 0;
    for (const auto& [m, p] : system.bracket) k = std::max(k, int(m.a) / 2);
    std::vector<Poly> h(static_cast<std::size_t>(k) + 1);
    for (const auto& [m, p] : system.bracket) {
        int j = k - int(m.a) / 2; // remaining cosh power
        // ((1+c)/2)^j = sum_l binom(j,l)/2^j * c^l
        Rational binom = 1;
        for (int l = 0; l <= j; ++l) {
            h[static_cast<std::size_t>(l)] += p.scaled(binom / rational_pow(Rational(2), static_cast<unsigned>(j)));
            binom = binom * (j - l) / (l + 1);
        }
    }
    for (auto& p : h) p = domain_stripped(p);
    return h;
}

} // namespace kdvlab
