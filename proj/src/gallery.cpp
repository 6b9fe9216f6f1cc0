#include "d2/gallery.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace d2 {

Algebra cyclic_group_algebra(const Field& f, int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return Algebra::group(f, t, f.name() + "[C" + std::to_string(n) + "]");
}

namespace {

std::vector<std::array<int, 3>> s3_elements() {
    std::vector<std::array<int, 3>> el;
    std::array<int, 3> p{0, 1, 2};
    do el.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return el;
}

int order_in_s3(const std::array<int, 3>& p) {
    if (p == std::array<int, 3>{0, 1, 2}) return 1;
    int fixed = (p[0] == 0) + (p[1] == 1) + (p[2] == 2);
    return fixed == 1 ? 2 : 3;
}

uint64_t mix(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Extension scalars_in(const Algebra& m, std::string name) {
    Subspace s(m.dim());
    s.insert(m.unit());
    return extension_from_subalgebra(m, s, std::move(name));
}

Extension s3_subgroup(const Field& f, int order, int pick, std::string name) {
    Algebra m = symmetric_group_algebra3(f);
    auto el = s3_elements();
    std::vector<int> cands;
    for (int i = 0; i < 6; ++i)
        if (order_in_s3(el[i]) == order) cands.push_back(i);
    int g = cands[pick % cands.size()];
    return extension_from_subalgebra(m, generated_subalgebra(m, {m.basis(g)}), std::move(name));
}

}  // namespace

Algebra symmetric_group_algebra3(const Field& f) {
    auto el = s3_elements();
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> c{el[i][el[j][0]], el[i][el[j][1]], el[i][el[j][2]]};
            t[i][j] = static_cast<int>(std::find(el.begin(), el.end(), c) - el.begin());
        }
    return Algebra::group(f, t, f.name() + "[S3]");
}

Algebra split_algebra(const Field& f, int n) {
    std::vector<Algebra::Entry> m;
    Vec u(n);
    for (int i = 0; i < n; ++i) {
        m.emplace_back(i, i, i, 1);
        u[i] = f.one();
    }
    return Algebra::from_structure(f, n, u, m, f.name() + "^" + std::to_string(n));
}

Algebra upper_triangular2(const Field& f) {
    return Algebra::from_structure(f, 3, {f.one(), f.zero(), f.one()},
                                   {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 2, 1, 1}, {2, 2, 2, 1}}, "T2(" + f.name() + ")");
}

Algebra truncated_polynomial(const Field& f, int n) {
    std::vector<Algebra::Entry> m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) m.emplace_back(i, j, i + j, 1);
    Vec u(n);
    u[0] = f.one();
    return Algebra::from_structure(f, n, u, m, f.name() + "[x]/x^" + std::to_string(n));
}

const std::vector<GalleryItem>& gallery() {
    static const std::vector<GalleryItem> items{
        {"trivial", "N = M = Q"},
        {"upper_triangular_in_M2", "upper triangular matrices in M_2(Q)"},
        {"upper_triangular_in_M2_F2", "upper triangular matrices in M_2(F_2)"},
        {"scalars_in_M2", "Q 1 in M_2(Q)"},
        {"scalars_in_QxQ", "Q 1 in Q x Q"},
        {"kC2_in_kC4", "Q[C_2] in Q[C_4]"},
        {"kC3_in_kS3", "Q[C_3] in Q[S_3]"},
        {"centrally_projective", "Q 1 in Q x Q x Q"},
        {"random_non_d2", "Q[<t>] in Q[S_3] for a seeded transposition t"},
    };
    return items;
}

Extension gallery_extension(const std::string& name, uint64_t seed) {
    Field q{};
    if (name == "trivial") {
        Algebra k = split_algebra(q, 1);
        return make_extension(k, k, Mat::identity(1), name);
    }
    if (name == "upper_triangular_in_M2" || name == "upper_triangular_in_M2_F2") {
        Field f = name == "upper_triangular_in_M2" ? q : Field{2};
        Algebra m = Algebra::matrix(f, 2);
        Subspace s = Subspace::span(4, {m.basis(0), m.basis(1), m.basis(3)});
        return extension_from_subalgebra(m, s, name);
    }
    if (name == "scalars_in_M2") return scalars_in(Algebra::matrix(q, 2), name);
    if (name == "scalars_in_QxQ") return scalars_in(split_algebra(q, 2), name);
    if (name == "centrally_projective") return scalars_in(split_algebra(q, 3), name);
    if (name == "kC2_in_kC4") {
        Algebra m = cyclic_group_algebra(q, 4);
        return extension_from_subalgebra(m, generated_subalgebra(m, {m.basis(2)}), name);
    }
    if (name == "kC3_in_kS3") return s3_subgroup(q, 3, 0, name);
    if (name == "random_non_d2") {
        uint64_t s = seed;
        return s3_subgroup(q, 2, static_cast<int>(mix(s) % 3), name);
    }
    throw std::invalid_argument("unknown gallery example '" + name + "'");
}

Extension random_extension(uint64_t seed, int max_dim) {
    uint64_t s = seed * 0x2545f4914f6cdd1dULL + 17;
    Field q{};
    std::vector<Algebra> menu{Algebra::matrix(q, 2),         cyclic_group_algebra(q, 4), symmetric_group_algebra3(q),
                              upper_triangular2(q),          split_algebra(q, 3),        truncated_polynomial(q, 3),
                              cyclic_group_algebra(q, 6),    split_algebra(q, 4),        Algebra::matrix(Field{2}, 2),
                              cyclic_group_algebra(Field{3}, 3)};
    menu.erase(std::remove_if(menu.begin(), menu.end(), [&](const Algebra& a) { return a.dim() > max_dim; }),
               menu.end());
    const Algebra& m = menu[mix(s) % menu.size()];
    int ngens = 1 + static_cast<int>(mix(s) % 2);
    for (int attempt = 0;; ++attempt) {
        std::vector<Vec> gens;
        for (int g = 0; g < ngens; ++g) {
            Vec v = random_element(m.field(), m.dim(), s, 1);
            // sparse elements give more varied subalgebras
            for (auto& x : v)
                if (mix(s) % 2) x = m.field().zero();
            gens.push_back(v);
        }
        Subspace n = generated_subalgebra(m, gens);
        if (m.dim() >= 6 && n.dim() < 2 && attempt < 8) continue;
        return extension_from_subalgebra(m, n, "random_" + std::to_string(seed) + "_" + m.name());
    }
}

}  // namespace d2
