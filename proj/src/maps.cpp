#include "orbitlab/maps.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbitlab/heights.hpp"

namespace orbitlab {

namespace {

long exponent_of(const Int& e) {
    if (!mpz_fits_slong_p(e.get_mpz_t())) throw std::overflow_error("matrix exponent too large");
    return e.get_si();
}

}  // namespace

long AffinePoint::max_bit_length() const {
    long b = 0;
    for (const Rat& c : coords) b = std::max(b, bit_length(c));
    return b;
}

long ProjectivePoint::max_bit_length() const {
    long b = 0;
    for (const Int& c : coords) b = std::max(b, bit_length(c));
    return b;
}

ProjectivePoint ProjectivePoint::canonical(std::vector<Int> raw) {
    if (raw.empty()) throw std::invalid_argument("ProjectivePoint: empty coordinates");
    Int g = 0;
    for (const Int& c : raw) g = gcd(g, c);
    if (g == 0) throw std::invalid_argument("ProjectivePoint: all coordinates zero");
    for (const Int& c : raw)
        if (c != 0) {
            if (c < 0) g = -g;
            break;
        }
    ProjectivePoint p;
    p.coords.reserve(raw.size());
    for (Int& c : raw) p.coords.push_back(c / g);
    return p;
}

ProjectivePoint ProjectivePoint::from_affine(const AffinePoint& a) {
    Int l = 1;
    for (const Rat& c : a.coords) {
        Int d(c.get_den());
        l = l / gcd(l, d) * d;
    }
    std::vector<Int> v;
    v.reserve(a.coords.size() + 1);
    for (const Rat& c : a.coords) v.push_back(Int(c.get_num()) * (l / Int(c.get_den())));
    v.push_back(l);
    return canonical(std::move(v));
}

std::optional<AffinePoint> ProjectivePoint::to_affine() const {
    const Int& last = coords.back();
    if (last == 0) return std::nullopt;
    AffinePoint a;
    a.coords.reserve(coords.size() - 1);
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
        Rat q(coords[i], last);
        q.canonicalize();
        a.coords.push_back(q);
    }
    return a;
}

MonomialMap MonomialMap::identity(int n) {
    return MonomialMap{IntMat::identity(n), std::vector<Rat>(n, Rat(1))};
}

TriangularMap TriangularMap::identity(int m) {
    TriangularMap t;
    for (int i = 0; i < m; ++i)
        t.components.push_back(RationalFunction::from_poly(MultiPoly::variable(m, i)));
    return t;
}

ProjectiveEndo ProjectiveEndo::make(std::vector<MultiPoly> coords) {
    if (coords.size() < 2) throw std::invalid_argument("ProjectiveEndo: need at least two coordinates");
    int nv = coords.front().nvars();
    if (static_cast<int>(coords.size()) != nv)
        throw std::invalid_argument("ProjectiveEndo: coordinate count must match variable count");
    bool all_zero = true;
    for (const MultiPoly& c : coords) {
        if (c.nvars() != nv) throw std::invalid_argument("ProjectiveEndo: variable count mismatch");
        if (!c.is_homogeneous()) throw std::invalid_argument("ProjectiveEndo: inhomogeneous coordinate");
        if (!c.is_zero()) all_zero = false;
    }
    if (all_zero) throw std::invalid_argument("ProjectiveEndo: zero coordinate tuple");

    // Monomial part of the gcd first, then the full polynomial gcd.
    std::vector<MultiPoly> nonzero;
    for (const MultiPoly& c : coords)
        if (!c.is_zero()) nonzero.push_back(c);
    Expo mg = monomial_gcd(nonzero);
    bool have_mono = std::any_of(mg.begin(), mg.end(), [](std::int64_t e) { return e > 0; });
    if (have_mono) {
        MultiPoly mono = MultiPoly::monomial(nv, mg, Rat(1));
        for (MultiPoly& c : coords)
            if (!c.is_zero()) c = divide_exact(c, mono);
    }
    nonzero.clear();
    for (const MultiPoly& c : coords)
        if (!c.is_zero()) nonzero.push_back(c);
    MultiPoly g = gcd_poly(nonzero);
    if (!g.is_constant())
        for (MultiPoly& c : coords)
            if (!c.is_zero()) c = divide_exact(c, g);

    std::int64_t d = -1;
    for (const MultiPoly& c : coords)
        if (!c.is_zero()) {
            if (d < 0) d = c.total_degree();
            else if (c.total_degree() != d)
                throw std::invalid_argument("ProjectiveEndo: coordinate degrees differ");
        }
    ProjectiveEndo e;
    e.dim = nv - 1;
    e.coords = std::move(coords);
    e.degree = d;
    return e;
}

ProjectiveEndo ProjectiveEndo::identity(int m) {
    std::vector<MultiPoly> c;
    for (int i = 0; i <= m; ++i) c.push_back(MultiPoly::variable(m + 1, i));
    return make(std::move(c));
}

int map_dim(const MapVariant& f) {
    return std::visit([](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ProjectiveEndo>) return m.dim;
        else return m.dim();
    }, f);
}

std::string family_name(const MapVariant& f) {
    if (std::holds_alternative<MonomialMap>(f)) return "monomial";
    if (std::holds_alternative<TriangularMap>(f)) return "triangular";
    return "projective";
}

std::optional<AffinePoint> evaluate(const MonomialMap& f, const AffinePoint& p) {
    int n = f.dim();
    if (p.dim() != n) throw std::invalid_argument("evaluate: dimension mismatch");
    for (const Rat& c : p.coords)
        if (c == 0) return std::nullopt;  // torus boundary
    AffinePoint out;
    out.coords.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rat v = f.coeff[i];
        for (int j = 0; j < n; ++j) {
            long e = exponent_of(f.matrix(i, j));
            if (f.matrix(i, j) != 0) v *= pow_rat(p.coords[j], e);
        }
        out.coords.push_back(v);
    }
    return out;
}

std::optional<AffinePoint> evaluate(const TriangularMap& f, const AffinePoint& p) {
    int m = f.dim();
    if (p.dim() != m) throw std::invalid_argument("evaluate: dimension mismatch");
    AffinePoint out;
    out.coords.reserve(m);
    for (const RationalFunction& comp : f.components) {
        auto v = comp.evaluate(p.coords);
        if (!v) return std::nullopt;  // pole
        out.coords.push_back(*v);
    }
    return out;
}

std::optional<ProjectivePoint> evaluate(const ProjectiveEndo& f, const ProjectivePoint& p) {
    if (p.dim() != f.dim) throw std::invalid_argument("evaluate: dimension mismatch");
    std::vector<Rat> pt(p.coords.size());
    for (std::size_t i = 0; i < p.coords.size(); ++i) pt[i] = Rat(p.coords[i]);
    std::vector<Rat> vals;
    vals.reserve(f.coords.size());
    for (const MultiPoly& c : f.coords) vals.push_back(c.evaluate(pt));
    Int l = 1;
    for (const Rat& v : vals) {
        Int d(v.get_den());
        l = l / gcd(l, d) * d;
    }
    std::vector<Int> raw;
    raw.reserve(vals.size());
    bool all_zero = true;
    for (const Rat& v : vals) {
        Int x = Int(v.get_num()) * (l / Int(v.get_den()));
        if (x != 0) all_zero = false;
        raw.push_back(x);
    }
    if (all_zero) return std::nullopt;  // indeterminacy
    return ProjectivePoint::canonical(std::move(raw));
}

MonomialMap compose(const MonomialMap& f, const MonomialMap& g) {
    int n = f.dim();
    if (g.dim() != n) throw std::invalid_argument("compose: dimension mismatch");
    MonomialMap h;
    h.matrix = f.matrix * g.matrix;
    h.coeff.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rat c = f.coeff[i];
        for (int j = 0; j < n; ++j)
            if (f.matrix(i, j) != 0)
                c *= pow_rat(g.coeff[j], exponent_of(f.matrix(i, j)));
        h.coeff.push_back(c);
    }
    return h;
}

TriangularMap compose(const TriangularMap& f, const TriangularMap& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("compose: dimension mismatch");
    TriangularMap h;
    h.components.reserve(f.components.size());
    for (const RationalFunction& comp : f.components)
        h.components.push_back(substitute(comp, g.components));
    return h;
}

ProjectiveEndo compose(const ProjectiveEndo& f, const ProjectiveEndo& g) {
    if (f.dim != g.dim) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<MultiPoly> coords;
    coords.reserve(f.coords.size());
    for (const MultiPoly& c : f.coords) coords.push_back(substitute(c, g.coords));
    return ProjectiveEndo::make(std::move(coords));
}

MapVariant compose(const MapVariant& f, const MapVariant& g) {
    if (f.index() != g.index()) throw std::invalid_argument("compose: family mismatch");
    if (std::holds_alternative<MonomialMap>(f))
        return compose(std::get<MonomialMap>(f), std::get<MonomialMap>(g));
    if (std::holds_alternative<TriangularMap>(f))
        return compose(std::get<TriangularMap>(f), std::get<TriangularMap>(g));
    return compose(std::get<ProjectiveEndo>(f), std::get<ProjectiveEndo>(g));
}

std::vector<RationalFunction> affine_components(const MonomialMap& f) {
    int n = f.dim();
    std::vector<RationalFunction> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Expo pos(n, 0), neg(n, 0);
        for (int j = 0; j < n; ++j) {
            long e = exponent_of(f.matrix(i, j));
            if (e > 0) pos[j] = e;
            if (e < 0) neg[j] = -e;
        }
        MultiPoly num = MultiPoly::monomial(n, pos, f.coeff[i]);
        MultiPoly den = MultiPoly::monomial(n, neg, Rat(1));
        out.emplace_back(std::move(num), std::move(den));
    }
    return out;
}

ProjectiveEndo homogenize(const std::vector<RationalFunction>& affine_map) {
    if (affine_map.empty()) throw std::invalid_argument("homogenize: empty map");
    int m = static_cast<int>(affine_map.size());
    for (const RationalFunction& c : affine_map)
        if (c.nvars() != m) throw std::invalid_argument("homogenize: component variable count mismatch");

    // Common denominator Q = lcm of the component denominators.
    MultiPoly q = MultiPoly::constant(m, Rat(1));
    for (const RationalFunction& c : affine_map) {
        MultiPoly g = gcd_poly(q, c.den());
        q = divide_exact(q, g) * c.den();
    }
    std::vector<MultiPoly> numerators;
    numerators.reserve(affine_map.size());
    for (const RationalFunction& c : affine_map)
        numerators.push_back(c.num() * divide_exact(q, c.den()));

    std::int64_t d = q.total_degree();
    for (const MultiPoly& nmr : numerators)
        if (!nmr.is_zero()) d = std::max(d, nmr.total_degree());

    // Embed into m+1 variables, padding with the new variable Z.
    auto embed = [m, d](const MultiPoly& p) {
        MultiPoly out(m + 1);
        for (const auto& [e, c] : p.terms()) {
            Expo ee(m + 1, 0);
            std::int64_t t = 0;
            for (int i = 0; i < m; ++i) {
                ee[i] = e[i];
                t += e[i];
            }
            ee[m] = d - t;
            out.add_term(ee, c);
        }
        return out;
    };
    std::vector<MultiPoly> coords;
    coords.reserve(m + 1);
    for (const MultiPoly& nmr : numerators) coords.push_back(embed(nmr));
    coords.push_back(embed(q));
    return ProjectiveEndo::make(std::move(coords));
}

ProjectiveEndo homogenize(const TriangularMap& f) { return homogenize(f.components); }

ProjectiveEndo homogenize(const MonomialMap& f) { return homogenize(affine_components(f)); }

namespace {

void validate_monomial(const MonomialMap& f, std::vector<std::string>& out) {
    int n = f.matrix.rows();
    if (f.matrix.cols() != n) {
        out.push_back("matrix not square");
        return;
    }
    if (static_cast<int>(f.coeff.size()) != n) {
        out.push_back("coefficient count mismatch");
        return;
    }
    if (det(f.matrix) == 0) out.push_back("singular matrix");
    for (const Rat& c : f.coeff)
        if (c == 0) {
            out.push_back("zero coefficient");
            break;
        }
}

void validate_triangular(const TriangularMap& f, std::vector<std::string>& out) {
    int m = f.dim();
    for (int i = 0; i < m; ++i) {
        const RationalFunction& c = f.components[i];
        if (c.nvars() != m) {
            out.push_back("component variable count mismatch");
            return;
        }
        for (int j = i + 1; j < m; ++j)
            if (c.num().degree_in(j) > 0 || c.den().degree_in(j) > 0) {
                out.push_back("component " + std::to_string(i + 1) + " uses a later variable");
                break;
            }
        if (c.den().degree_in(i) > 0)
            out.push_back("component " + std::to_string(i + 1) + " denominator depends on its own variable");
        if (c.num().degree_in(i) < 1)
            out.push_back("not dominant: component " + std::to_string(i + 1) + " is constant in its variable");
    }
}

void validate_projective(const ProjectiveEndo& f, std::vector<std::string>& out) {
    int nv = f.dim + 1;
    if (static_cast<int>(f.coords.size()) != nv) {
        out.push_back("coordinate count mismatch");
        return;
    }
    std::int64_t d = -1;
    bool all_zero = true;
    for (const MultiPoly& c : f.coords) {
        if (!c.is_homogeneous()) out.push_back("inhomogeneous coordinate");
        if (!c.is_zero()) {
            all_zero = false;
            if (d < 0) d = c.total_degree();
            else if (c.total_degree() != d) out.push_back("coordinate degrees differ");
        }
    }
    if (all_zero) {
        out.push_back("zero coordinate tuple");
        return;
    }
    if (d < 1) out.push_back("constant map");
    if (f.degree != d) out.push_back("stored degree mismatch");
    std::vector<MultiPoly> nonzero;
    for (const MultiPoly& c : f.coords)
        if (!c.is_zero()) nonzero.push_back(c);
    if (!gcd_poly(nonzero).is_constant()) out.push_back("common factor");
}

}  // namespace

std::vector<std::string> validate_map(const MapVariant& f) {
    std::vector<std::string> out;
    if (std::holds_alternative<MonomialMap>(f)) validate_monomial(std::get<MonomialMap>(f), out);
    else if (std::holds_alternative<TriangularMap>(f)) validate_triangular(std::get<TriangularMap>(f), out);
    else validate_projective(std::get<ProjectiveEndo>(f), out);
    return out;
}

std::string to_string(OrbitStatus::Kind k) {
    switch (k) {
        case OrbitStatus::Kind::completed: return "completed";
        case OrbitStatus::Kind::pole_hit: return "pole-hit";
        case OrbitStatus::Kind::torus_boundary_hit: return "torus-boundary-hit";
        case OrbitStatus::Kind::height_budget_exceeded: return "height-budget-exceeded";
    }
    return "unknown";
}

OrbitRecord iterate_orbit(const MapVariant& map, const AffinePoint& start, int n_max, long height_budget_bits) {
    if (std::holds_alternative<ProjectiveEndo>(map))
        return iterate_orbit(std::get<ProjectiveEndo>(map), ProjectivePoint::from_affine(start), n_max,
                             height_budget_bits);
    if (n_max < 0) throw std::invalid_argument("iterate_orbit: n_max must be >= 0");
    if (height_budget_bits < start.max_bit_length())
        throw std::invalid_argument("iterate_orbit: budget below the start point size");
    OrbitRecord rec;
    rec.projective = false;
    auto push = [&rec](const AffinePoint& p) {
        rec.affine_points.push_back(p);
        HeightValue h = height_affine(p);
        rec.heights.push_back(h.value);
        rec.height_bitlens.push_back(h.exact_bitlen);
    };
    push(start);
    bool boundary_kind = std::holds_alternative<MonomialMap>(map);
    for (int k = 0; k < n_max; ++k) {
        const AffinePoint& cur = rec.affine_points.back();
        std::optional<AffinePoint> next;
        if (boundary_kind) next = evaluate(std::get<MonomialMap>(map), cur);
        else next = evaluate(std::get<TriangularMap>(map), cur);
        if (!next) {
            rec.status = {boundary_kind ? OrbitStatus::Kind::torus_boundary_hit : OrbitStatus::Kind::pole_hit, k};
            return rec;
        }
        if (next->max_bit_length() > height_budget_bits) {
            rec.status = {OrbitStatus::Kind::height_budget_exceeded, k + 1};
            return rec;
        }
        push(*next);
    }
    rec.status = {OrbitStatus::Kind::completed, -1};
    return rec;
}

OrbitRecord iterate_orbit(const ProjectiveEndo& map, const ProjectivePoint& start, int n_max,
                          long height_budget_bits) {
    if (n_max < 0) throw std::invalid_argument("iterate_orbit: n_max must be >= 0");
    if (height_budget_bits < start.max_bit_length())
        throw std::invalid_argument("iterate_orbit: budget below the start point size");
    OrbitRecord rec;
    rec.projective = true;
    auto push = [&rec](const ProjectivePoint& p) {
        rec.projective_points.push_back(p);
        HeightValue h = height_projective(p);
        rec.heights.push_back(h.value);
        rec.height_bitlens.push_back(h.exact_bitlen);
    };
    push(start);
    for (int k = 0; k < n_max; ++k) {
        auto next = evaluate(map, rec.projective_points.back());
        if (!next) {
            // Indeterminacy is the projective pole.
            rec.status = {OrbitStatus::Kind::pole_hit, k};
            return rec;
        }
        if (next->max_bit_length() > height_budget_bits) {
            rec.status = {OrbitStatus::Kind::height_budget_exceeded, k + 1};
            return rec;
        }
        push(*next);
    }
    rec.status = {OrbitStatus::Kind::completed, -1};
    return rec;
}

}  // namespace orbitlab
