#include "purity/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace purity {

std::string subset_label(const Subset& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

namespace {

std::string subset_key(const Subset& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out;
}

Subset parse_subset_key(const std::string& key) {
    Subset s;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw LoadError("malformed subset key \"" + key + "\"");
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw LoadError("malformed subset key \"" + key + "\"");
        s.push_back(v);
    }
    return s;
}

std::string edge_label(const Subset& a, const Subset& b) { return subset_label(a) + "→" + subset_label(b); }

Json field_to_json(const FieldSpec& f) {
    Json j{{"p", f.p()}, {"e", f.e()}};
    if (f.e() > 1) j["modulus"] = f.modulus();
    return j;
}

FieldSpec field_from_json(const Json& j) {
    if (!j.is_object()) throw LoadError("field must be an object");
    if (j.contains("q")) return FieldSpec::of_order(j.at("q").get<int>());
    int p = j.at("p").get<int>();
    int e = j.value("e", 1);
    if (e == 1) return FieldSpec::prime(p);
    return FieldSpec::with_modulus(p, e, j.at("modulus").get<std::vector<int>>());
}

}  // namespace

const Stratum& SemistableComplex::stratum(const Subset& s) const {
    auto it = strata.find(s);
    if (it == strata.end()) throw std::out_of_range("no stratum " + subset_label(s));
    return it->second;
}

bool SemistableComplex::has_lefschetz() const {
    for (const auto& [s, st] : strata)
        if (!st.lefschetz) return false;
    return !strata.empty();
}

Json variety_to_json(const VarietySpec& v) {
    switch (v.kind) {
        case VarietyKind::Projective:
            if (v.n == 0) return Json{{"kind", "point"}};
            return Json{{"kind", "projective"}, {"n", v.n}};
        case VarietyKind::BlownUp:
            return Json{{"kind", "blown_up"}, {"n", v.n}, {"field", field_to_json(v.field)}};
        case VarietyKind::BlownUpPoints: {
            Json pts = Json::array();
            for (const auto& p : v.points) pts.push_back(p.row(0));
            return Json{{"kind", "blown_up_points"}, {"field", field_to_json(v.field)}, {"points", pts}};
        }
        case VarietyKind::Product: {
            Json f = Json::array();
            for (const auto& p : v.parts) f.push_back(variety_to_json(p));
            return Json{{"kind", "product"}, {"factors", f}};
        }
        case VarietyKind::DisjointUnion: {
            Json f = Json::array();
            for (const auto& p : v.parts) f.push_back(variety_to_json(p));
            return Json{{"kind", "disjoint_union"}, {"pieces", f}};
        }
    }
    return {};
}

VarietySpec variety_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw LoadError("variety must be an object with a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point") return VarietySpec::point();
    if (kind == "projective") return VarietySpec::projective(j.at("n").get<int>());
    if (kind == "blown_up") return VarietySpec::blown_up(j.at("n").get<int>(), field_from_json(j.at("field")));
    if (kind == "blown_up_points") {
        FieldSpec f = field_from_json(j.at("field"));
        std::vector<LinearSubvariety> pts;
        for (const auto& p : j.at("points")) {
            auto v = p.get<std::vector<int>>();
            if (v.size() != 3) throw LoadError("blow-up centers are points of P^2");
            for (int x : v)
                if (x < 0 || x >= f.q()) throw LoadError("point coordinate outside the field");
            auto s = LinearSubvariety::span(f, 2, {v});
            if (s.dim() != 0) throw LoadError("zero vector is not a point");
            pts.push_back(s);
        }
        return VarietySpec::blown_up_points(f, pts);
    }
    if (kind == "product") {
        std::vector<VarietySpec> f;
        for (const auto& x : j.at("factors")) f.push_back(variety_from_json(x));
        return VarietySpec::product(f);
    }
    if (kind == "disjoint_union") {
        std::vector<VarietySpec> f;
        for (const auto& x : j.at("pieces")) f.push_back(variety_from_json(x));
        return VarietySpec::disjoint_union(f);
    }
    throw LoadError("unknown variety kind \"" + kind + "\"");
}

Json matrix_to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

RationalMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw LoadError("matrix must have " + std::to_string(rows) + " rows");
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw LoadError("matrix row must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& x = j[r][c];
            if (x.is_string())
                m(r, c) = parse_rational(x.get<std::string>());
            else if (x.is_number_integer())
                m(r, c) = Rational(x.get<long>());
            else
                throw LoadError("matrix entries must be rational strings");
        }
    }
    return m;
}

namespace {

RationalVector vector_from_json(const Json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw LoadError("Lefschetz class must have " + std::to_string(n) + " entries");
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (j[i].is_string())
            v[i] = parse_rational(j[i].get<std::string>());
        else if (j[i].is_number_integer())
            v[i] = Rational(j[i].get<long>());
        else
            throw LoadError("Lefschetz entries must be rational strings");
    }
    return v;
}

Json vector_to_json(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

void read_stratum(SemistableComplex& cx, const Subset& s, const Json& entry, const ResourceLimits& limits,
                  std::map<Subset, Json>& pending) {
    if (cx.strata.count(s)) throw LoadError("duplicate stratum " + subset_label(s));
    Stratum st;
    st.subset = s;
    st.variety = variety_from_json(entry.at("variety"));
    const int expected = cx.n - int(s.size()) + 1;
    if (st.variety.dimension() != expected)
        throw LoadError("stratum " + subset_label(s) + " has dimension " + std::to_string(st.variety.dimension()) +
                        ", expected " + std::to_string(expected));
    st.ring = build_ring(st.variety, limits);
    if (entry.contains("lefschetz")) st.lefschetz = vector_from_json(entry.at("lefschetz"), st.ring->rank(1));
    if (entry.contains("restrictions")) pending[s] = entry.at("restrictions");
    cx.strata.emplace(s, std::move(st));
}

}  // namespace

std::vector<RationalMatrix> restriction_between(const SemistableComplex& cx, const Subset& s, const Subset& t) {
    const auto& src = cx.stratum(s);
    const auto& dst = cx.stratum(t);
    std::vector<RationalMatrix> out;
    for (int k = 0; k <= dst.ring->n; ++k) out.push_back(RationalMatrix::identity(src.ring->rank(k)));
    Subset cur = s;
    for (int x : t) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        Subset next = cur;
        next.insert(std::upper_bound(next.begin(), next.end(), x), x);
        const auto& maps = cx.stratum(cur).restrictions.at(next);
        for (int k = 0; k <= dst.ring->n; ++k) out[k] = maps[k] * out[k];
        cur = next;
    }
    return out;
}

SemistableComplex load_complex(const Json& d, const ResourceLimits& limits) {
    SemistableComplex cx;
    std::map<Subset, Json> pending;
    try {
        if (!d.is_object()) throw LoadError("complex description must be a JSON object");
        if (!d.contains("schema_version") || d.at("schema_version") != 1) throw LoadError("unsupported schema_version");
        cx.n = d.at("dimension").get<int>();
        if (cx.n < 0) throw LoadError("negative dimension");
        cx.q = d.value("q", 0);
        const Json& comps = d.at("components");
        if (!comps.is_array() || comps.empty()) throw LoadError("components must be a nonempty array");
        cx.component_count = int(comps.size());
        for (int i = 0; i < cx.component_count; ++i) read_stratum(cx, {i + 1}, comps[i], limits, pending);
        if (d.contains("strata")) {
            for (const auto& e : d.at("strata")) {
                Subset s = e.at("subset").get<Subset>();
                if (s.size() < 2) throw LoadError("strata entries need at least two components");
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (s[i] < 1 || s[i] > cx.component_count) throw LoadError("stratum index out of range in " + subset_label(s));
                    if (i && s[i] <= s[i - 1]) throw LoadError("stratum subset must be strictly increasing: " + subset_label(s));
                }
                read_stratum(cx, s, e, limits, pending);
            }
        }
    } catch (const LoadError&) {
        throw;
    } catch (const ResourceError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoadError(std::string("schema violation: ") + e.what());
    }

    // faces of every stratum are strata
    for (const auto& [s, st] : cx.strata)
        for (std::size_t i = 0; s.size() > 1 && i < s.size(); ++i) {
            Subset f = s;
            f.erase(f.begin() + long(i));
            if (!cx.strata.count(f)) throw LoadError("stratum " + subset_label(s) + " lacks its face " + subset_label(f));
        }

    // restriction matrices
    for (auto& [s, st] : cx.strata) {
        std::set<Subset> given;
        if (auto it = pending.find(s); it != pending.end()) {
            if (!it->second.is_object()) throw LoadError("restrictions of " + subset_label(s) + " must be an object");
            for (const auto& [key, mats] : it->second.items()) {
                Subset t = parse_subset_key(key);
                if (t.size() != s.size() + 1 || !std::includes(t.begin(), t.end(), s.begin(), s.end()))
                    throw LoadError("restriction " + edge_label(s, t) + " does not add exactly one component");
                auto tt = cx.strata.find(t);
                if (tt == cx.strata.end()) throw LoadError("restriction to missing stratum " + subset_label(t));
                const auto& tr = *tt->second.ring;
                if (!mats.is_array() || int(mats.size()) != tr.n + 1)
                    throw LoadError("restriction " + edge_label(s, t) + " needs one matrix per degree 0.." +
                                    std::to_string(tr.n));
                std::vector<RationalMatrix> ms;
                for (int k = 0; k <= tr.n; ++k) {
                    try {
                        ms.push_back(matrix_from_json(mats[k], tr.rank(k), st.ring->rank(k)));
                    } catch (const std::exception& e) {
                        throw LoadError("restriction " + edge_label(s, t) + " degree " + std::to_string(k) + ": " + e.what());
                    }
                }
                st.restrictions[t] = std::move(ms);
                given.insert(t);
            }
        }
        for (int j = 1; j <= cx.component_count; ++j) {
            if (std::binary_search(s.begin(), s.end(), j)) continue;
            Subset t = s;
            t.insert(std::upper_bound(t.begin(), t.end(), j), j);
            if (cx.strata.count(t) && !given.count(t)) throw LoadError("missing restriction " + edge_label(s, t));
        }
    }

    // square commutativity
    {
        std::vector<std::pair<std::pair<Subset, Subset>, std::pair<Subset, Subset>>> failing;
        for (const auto& [s, st] : cx.strata)
            for (int a = 1; a <= cx.component_count; ++a)
                for (int b = a + 1; b <= cx.component_count; ++b) {
                    if (std::binary_search(s.begin(), s.end(), a) || std::binary_search(s.begin(), s.end(), b)) continue;
                    Subset sa = s, sb = s, sab = s;
                    sa.insert(std::upper_bound(sa.begin(), sa.end(), a), a);
                    sb.insert(std::upper_bound(sb.begin(), sb.end(), b), b);
                    sab.insert(std::upper_bound(sab.begin(), sab.end(), a), a);
                    sab.insert(std::upper_bound(sab.begin(), sab.end(), b), b);
                    if (!cx.strata.count(sab)) continue;
                    const auto& ra = st.restrictions.at(sa);
                    const auto& rb = st.restrictions.at(sb);
                    const auto& rab = cx.strata.at(sa).restrictions.at(sab);
                    const auto& rba = cx.strata.at(sb).restrictions.at(sab);
                    bool ok = true;
                    for (int k = 0; k <= cx.strata.at(sab).ring->n && ok; ++k)
                        if (!(rab[k] * ra[k] == rba[k] * rb[k])) ok = false;
                    if (!ok) failing.push_back({{s, sa}, {sa, sab}}), failing.push_back({{s, sb}, {sb, sab}});
                }
        if (!failing.empty()) {
            // the edge shared by the most failing squares is the likely culprit
            std::map<std::pair<Subset, Subset>, int> count;
            for (std::size_t i = 0; i < failing.size(); ++i) {
                ++count[failing[i].first];
                ++count[failing[i].second];
            }
            auto best = count.begin();
            for (auto it = count.begin(); it != count.end(); ++it)
                if (it->second > best->second) best = it;
            throw LoadError("restriction square does not commute at strata " + edge_label(best->first.first, best->first.second));
        }
    }

    // ring homomorphism
    for (const auto& [s, st] : cx.strata)
        for (const auto& [t, maps] : st.restrictions) {
            const auto& src = *st.ring;
            const auto& dst = *cx.strata.at(t).ring;
            if (!(maps[0] * src.unit() == dst.unit()))
                throw LoadError("restriction " + edge_label(s, t) + " does not preserve the unit");
            for (int j = 1; j <= dst.n; ++j)
                for (int k = j; j + k <= dst.n; ++k)
                    for (std::size_t a = 0; a < src.rank(j); ++a)
                        for (std::size_t b = 0; b < src.rank(k); ++b) {
                            RationalVector ea(src.rank(j)), eb(src.rank(k));
                            ea[a] = 1;
                            eb[b] = 1;
                            auto lhs = maps[j + k] * src.multiply(j, ea, k, eb);
                            auto rhs = dst.multiply(j, maps[j] * ea, k, maps[k] * eb);
                            if (lhs != rhs)
                                throw LoadError("restriction " + edge_label(s, t) + " is not a ring homomorphism in degrees (" +
                                                std::to_string(j) + "," + std::to_string(k) + ")");
                        }
        }

    // Lefschetz classes: components carry them, intersections inherit them by restriction
    bool any = false, all = true;
    for (int i = 1; i <= cx.component_count; ++i) {
        bool has = cx.strata.at({i}).lefschetz.has_value();
        any = any || has;
        all = all && has;
    }
    if (any && !all) throw LoadError("either every component or none carries a Lefschetz class");
    if (all) {
        for (auto& [s, st] : cx.strata) {
            if (s.size() < 2 || st.lefschetz) continue;
            Subset f(s.begin(), s.end() - 1);
            const auto& parent = cx.strata.at(f);
            const auto& maps = parent.restrictions.at(s);
            st.lefschetz = maps.size() > 1 ? maps[1] * *parent.lefschetz : RationalVector{};
        }
        for (const auto& [s, st] : cx.strata)
            for (const auto& [t, maps] : st.restrictions)
                if (maps.size() > 1 && !(maps[1] * *st.lefschetz == *cx.strata.at(t).lefschetz))
                    throw LoadError("Lefschetz classes disagree along " + edge_label(s, t));
    }

    cx.levels.assign(1, {});
    for (const auto& [s, st] : cx.strata) {
        if (int(cx.levels.size()) <= int(s.size())) cx.levels.resize(s.size() + 1);
        cx.levels[s.size()].push_back(s);
    }
    for (auto& l : cx.levels) std::sort(l.begin(), l.end());
    if (cx.max_level() > cx.n + 1) throw LoadError("more than dimension + 1 components meet");
    return cx;
}

Json complex_to_json(const SemistableComplex& cx) {
    Json out{{"schema_version", 1}, {"dimension", cx.n}, {"q", cx.q}};
    auto entry = [&](const Stratum& st) {
        Json e{{"variety", variety_to_json(st.variety)}};
        if (st.lefschetz && st.subset.size() == 1) e["lefschetz"] = vector_to_json(*st.lefschetz);
        Json r = Json::object();
        for (const auto& [t, maps] : st.restrictions) {
            Json ms = Json::array();
            for (const auto& m : maps) ms.push_back(matrix_to_json(m));
            r[subset_key(t)] = ms;
        }
        if (!r.empty()) e["restrictions"] = r;
        return e;
    };
    Json comps = Json::array(), strata = Json::array();
    for (const auto& [s, st] : cx.strata) {
        if (s.size() == 1) {
            comps.push_back(entry(st));
        } else {
            Json e = entry(st);
            e["subset"] = s;
            strata.push_back(e);
        }
    }
    out["components"] = comps;
    out["strata"] = strata;
    return out;
}

}  // namespace purity
