#include "d2/tensor.hpp"

#include <stdexcept>

namespace d2 {

Vec TensorQuotient::project(const SparseVec& amb) const {
    Vec out(dim());
    for (const auto& [c, x] : amb)
        for (const auto& [q, y] : nf[c]) addmul(out[q], x, y);
    return out;
}

void TensorQuotient::add_pure(Vec& out, const Scalar& c, const Vec& x, const Vec& y) const {
    for (int i = 0; i < dv; ++i) {
        if (x[i].is_zero()) continue;
        Scalar cx = c * x[i];
        for (int j = 0; j < dw; ++j) {
            if (y[j].is_zero()) continue;
            Scalar cxy = cx * y[j];
            for (const auto& [q, z] : nf[i * dw + j]) addmul(out[q], cxy, z);
        }
    }
}

void TensorQuotient::add_pure(Vec& out, const Scalar& c, const SparseVec& x, const SparseVec& y) const {
    for (const auto& [i, a] : x) {
        Scalar ca = c * a;
        for (const auto& [j, b] : y) {
            Scalar cab = ca * b;
            for (const auto& [q, z] : nf[i * dw + j]) addmul(out[q], cab, z);
        }
    }
}

Vec TensorQuotient::pure(const Vec& x, const Vec& y) const {
    Vec out(dim());
    add_pure(out, field.one(), x, y);
    return out;
}

Mat TensorQuotient::induced(const Mat& fv, const Mat& fw) const {
    Mat m(dim(), dim());
    for (int q = 0; q < dim(); ++q) {
        auto [v, w] = section(q);
        SparseVec a = fv.sparse_col(v), b = fw.sparse_col(w);
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) {
                Scalar xy = x * y;
                for (const auto& [r, z] : nf[i * dw + j]) addmul(m(r, q), xy, z);
            }
    }
    return m;
}

Vec TensorQuotient::lift(const Vec& q) const {
    Vec out(ambient());
    for (int i = 0; i < dim(); ++i) out[qbasis[i]] = q[i];
    return out;
}

TensorQuotient tensor_over(const Field& f, const Bimodule& v, const Bimodule& w, std::string label) {
    if (v.right_gen.size() != w.left_gen.size())
        throw std::invalid_argument("tensor_over: balancing algebras differ");
    TensorQuotient t;
    t.field = f;
    t.dv = v.dim;
    t.dw = w.dim;
    t.label = std::move(label);
    const int dw = w.dim;
    std::vector<SparseVec> rels;
    for (size_t g = 0; g < v.right_gen.size(); ++g) {
        const Mat& a = v.right_gen[g];
        const Mat& b = w.left_gen[g];
        std::vector<SparseVec> acol(v.dim), bcol(dw);
        for (int i = 0; i < v.dim; ++i) acol[i] = a.sparse_col(i);
        for (int j = 0; j < dw; ++j) bcol[j] = b.sparse_col(j);
        for (int i = 0; i < v.dim; ++i)
            for (int j = 0; j < dw; ++j) {
                std::vector<std::pair<int, Scalar>> terms;
                for (const auto& [k, c] : acol[i]) terms.emplace_back(k * dw + j, c);
                for (const auto& [k, c] : bcol[j]) terms.emplace_back(i * dw + k, -c);
                SparseVec r = make_sparse(std::move(terms));
                if (!r.empty()) rels.push_back(std::move(r));
            }
    }
    t.rel = Subspace(v.dim * dw);
    for (const auto& r : rels) t.rel.insert(r);
    t.qindex.assign(t.ambient(), -1);
    for (int c : t.rel.nonpivots()) {
        t.qindex[c] = static_cast<int>(t.qbasis.size());
        t.qbasis.push_back(c);
    }
    t.nf.resize(t.ambient());
    for (int c = 0; c < t.ambient(); ++c) {
        if (t.qindex[c] >= 0) {
            t.nf[c] = {{t.qindex[c], f.one()}};
            continue;
        }
        const SparseVec& row = t.rel.rows()[t.rel.row_of_col(c)];
        SparseVec out;
        for (const auto& [k, x] : row)
            if (k != c) out.emplace_back(t.qindex[k], -x);
        t.nf[c] = make_sparse(std::move(out));
    }
    t.module.dim = t.dim();
    t.module.name = v.name + "(x)" + w.name;
    Mat idv = Mat::identity(v.dim), idw = Mat::identity(dw);
    for (const auto& l : v.left) t.module.left.push_back(t.induced(l, idw));
    for (const auto& l : v.left_gen) t.module.left_gen.push_back(t.induced(l, idw));
    for (const auto& r : w.right) t.module.right.push_back(t.induced(idv, r));
    for (const auto& r : w.right_gen) t.module.right_gen.push_back(t.induced(idv, r));
    return t;
}

void require_label(const TensorQuotient& t, const std::string& label) {
    if (t.label != label) throw std::logic_error("tensor quotient '" + t.label + "' used where '" + label + "' is required");
}

Mat map_between(const TensorQuotient& from, const TensorQuotient& to, const Mat& fv, const Mat& fw) {
    Mat m(to.dim(), from.dim());
    for (int q = 0; q < from.dim(); ++q) {
        auto [v, w] = from.section(q);
        Vec col(to.dim());
        to.add_pure(col, to.field.one(), fv.sparse_col(v), fw.sparse_col(w));
        m.set_col(q, col);
    }
    return m;
}

std::vector<PureTerm> terms(const TensorQuotient& t, const Vec& q) {
    std::vector<PureTerm> out;
    for (int i = 0; i < t.dim(); ++i)
        if (!q[i].is_zero()) {
            auto [v, w] = t.section(i);
            out.push_back({v, w, q[i]});
        }
    return out;
}

}  // namespace d2
