#include "d2/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "d2/gallery.hpp"
#include "d2/morita.hpp"

namespace d2 {

const std::vector<std::string>& known_tasks() {
    static const std::vector<std::string> t{"analyze", "d2", "bialgebroid", "frobenius", "hopf", "weakhopf", "qf"};
    return t;
}

// ---------------------------------------------------------------- parsing

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& need(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) bad(path + "." + key, "missing");
    return j.at(key);
}

int as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<int>();
}

Scalar as_scalar(const Json& j, const Field& f, const std::string& path) {
    try {
        if (j.is_number_integer()) return f.of(j.get<long>());
        if (j.is_string()) return Scalar::parse(j.get<std::string>(), f.p);
    } catch (const std::exception& ex) {
        bad(path, ex.what());
    }
    bad(path, "expected an integer or a \"p/q\" string");
}

Vec as_vec(const Json& j, const Field& f, int n, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    if (static_cast<int>(j.size()) != n) bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = as_scalar(j[i], f, path + "[" + std::to_string(i) + "]");
    return v;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Field parse_field(const Json& j, const std::string& path) {
    const Json& kind = need(j, "kind", path);
    if (kind == "rational") return Field{};
    if (kind == "prime") {
        int p = as_int(need(j, "p", path), path + ".p");
        if (!is_prime(p) || p > 46337) bad(path + ".p", "expected a prime below 46337");
        return Field{static_cast<uint32_t>(p)};
    }
    bad(path + ".kind", "unknown field kind");
}

class AlgebraTable {
public:
    AlgebraTable(const Json& defs, const Field& f, int max_dim) : defs_(defs), f_(f), max_dim_(max_dim) {}

    const Algebra& get(const std::string& name, const std::string& from) {
        if (auto it = done_.find(name); it != done_.end()) return it->second;
        if (!defs_.contains(name)) bad(from, "unknown algebra '" + name + "'");
        if (busy_.count(name)) bad(from, "algebra '" + name + "' refers to itself");
        busy_.insert(name);
        Algebra a = build(name, defs_.at(name), "algebras." + name);
        busy_.erase(name);
        if (a.dim() > max_dim_)
            bad("algebras." + name, "dimension " + std::to_string(a.dim()) + " exceeds the cap " + std::to_string(max_dim_));
        return done_.emplace(name, std::move(a)).first->second;
    }
    std::map<std::string, Algebra> all() {
        for (const auto& [k, v] : defs_.items()) get(k, "algebras");
        return done_;
    }

private:
    const Json& defs_;
    Field f_;
    int max_dim_;
    std::map<std::string, Algebra> done_;
    std::set<std::string> busy_;

    Algebra build(const std::string& name, const Json& d, const std::string& path) {
        const Json& kind = need(d, "kind", path);
        if (!kind.is_string()) bad(path + ".kind", "expected a string");
        const std::string k = kind.get<std::string>();
        try {
            if (k == "structure") {
                int n = as_int(need(d, "dim", path), path + ".dim");
                if (n < 1) bad(path + ".dim", "must be positive");
                if (n > max_dim_) bad(path + ".dim", "exceeds the cap " + std::to_string(max_dim_));
                if (!d.contains("unit")) bad(path + ".unit", "missing: the unit law needs an identity element");
                Vec unit = as_vec(d.at("unit"), f_, n, path + ".unit");
                std::vector<Algebra::Entry> mult;
                const Json& m = need(d, "mult", path);
                if (!m.is_array()) bad(path + ".mult", "expected an array");
                for (size_t t = 0; t < m.size(); ++t) {
                    std::string p = path + ".mult[" + std::to_string(t) + "]";
                    if (!m[t].is_array() || m[t].size() != 4) bad(p, "expected [i, j, k, c]");
                    int i = as_int(m[t][0], p), j = as_int(m[t][1], p), kk = as_int(m[t][2], p);
                    if (i < 0 || j < 0 || kk < 0 || i >= n || j >= n || kk >= n) bad(p, "index out of range");
                    mult.emplace_back(i, j, kk, as_scalar(m[t][3], f_, p + "[3]"));
                }
                return Algebra::from_structure(f_, n, unit, mult, name);
            }
            if (k == "matrix") {
                int n = as_int(need(d, "n", path), path + ".n");
                if (n < 1 || n * n > max_dim_) bad(path + ".n", "out of range for the dimension cap");
                return Algebra::matrix(f_, n);
            }
            if (k == "group") {
                const Json& t = need(d, "table", path);
                if (!t.is_array() || t.empty()) bad(path + ".table", "expected a square array");
                const int n = static_cast<int>(t.size());
                if (n > max_dim_) bad(path + ".table", "exceeds the cap " + std::to_string(max_dim_));
                std::vector<std::vector<int>> tab(n, std::vector<int>(n));
                for (int i = 0; i < n; ++i) {
                    if (!t[i].is_array() || static_cast<int>(t[i].size()) != n) bad(path + ".table", "expected a square array");
                    for (int j = 0; j < n; ++j) {
                        tab[i][j] = as_int(t[i][j], path + ".table");
                        if (tab[i][j] < 0 || tab[i][j] >= n) bad(path + ".table", "entry out of range");
                    }
                }
                return Algebra::group(f_, tab, name);
            }
            if (k == "product" || k == "tensor") {
                const Json& of = need(d, "of", path);
                if (!of.is_array() || of.size() < 2) bad(path + ".of", "expected at least two names");
                Algebra acc = get(of[0].get<std::string>(), path + ".of");
                for (size_t i = 1; i < of.size(); ++i) {
                    const Algebra& b = get(of[i].get<std::string>(), path + ".of");
                    acc = k == "product" ? Algebra::product(acc, b) : Algebra::tensor(acc, b);
                    if (acc.dim() > max_dim_) bad(path, "exceeds the cap " + std::to_string(max_dim_));
                }
                return acc;
            }
            if (k == "opposite") {
                const Json& of = need(d, "of", path);
                if (!of.is_string()) bad(path + ".of", "expected a name");
                return Algebra::opposite(get(of.get<std::string>(), path + ".of"));
            }
        } catch (const AlgebraError& ex) {
            bad(path, ex.what());
        } catch (const nlohmann::json::exception& ex) {
            bad(path, ex.what());
        }
        bad(path + ".kind", "unknown algebra kind '" + k + "'");
    }
};

}  // namespace

JobSpec parse_job(const Json& j) {
    if (!j.is_object()) bad("$", "expected an object");
    JobSpec job;
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) bad("seed", "expected a non-negative integer");
        job.seed = j.at("seed").get<uint64_t>();
    }
    if (j.contains("checkLevel")) {
        const Json& l = j.at("checkLevel");
        if (l == "fast")
            job.level = CheckLevel::fast;
        else if (l == "full")
            job.level = CheckLevel::full;
        else
            bad("checkLevel", "expected \"fast\" or \"full\"");
    }
    if (j.contains("maxDim")) {
        job.max_dim = as_int(j.at("maxDim"), "maxDim");
        if (job.max_dim < 1) bad("maxDim", "must be positive");
    }
    if (j.contains("tasks")) {
        const Json& t = j.at("tasks");
        if (!t.is_array()) bad("tasks", "expected an array");
        std::set<std::string> want;
        for (size_t i = 0; i < t.size(); ++i) {
            if (!t[i].is_string()) bad("tasks[" + std::to_string(i) + "]", "expected a string");
            std::string s = t[i].get<std::string>();
            if (s == "all") {
                want.insert(known_tasks().begin(), known_tasks().end());
                continue;
            }
            bool known = false;
            for (const auto& k : known_tasks()) known = known || k == s;
            if (!known) bad("tasks[" + std::to_string(i) + "]", "unknown task '" + s + "'");
            want.insert(s);
        }
        for (const auto& k : known_tasks())
            if (want.count(k)) job.tasks.push_back(k);
    } else {
        job.tasks = {"analyze"};
    }

    if (j.contains("example")) {
        if (!j.at("example").is_string()) bad("example", "expected a gallery name");
        job.example = j.at("example").get<std::string>();
        bool found = false;
        for (const auto& g : gallery()) found = found || g.name == job.example;
        if (!found) bad("example", "unknown gallery item '" + job.example + "'");
        job.ext = gallery_extension(job.example, job.seed);
        job.field = job.ext.field();
        if (job.ext.m.dim() > job.max_dim) bad("example", "dimension exceeds the cap " + std::to_string(job.max_dim));
        return job;
    }

    job.field = parse_field(need(j, "field", "$"), "field");
    const Json& defs = need(j, "algebras", "$");
    if (!defs.is_object()) bad("algebras", "expected an object");
    AlgebraTable table(defs, job.field, job.max_dim);
    job.algebras = table.all();
    const Json& ex = need(j, "extension", "$");
    const Json& sub = need(ex, "sub", "extension");
    const Json& over = need(ex, "over", "extension");
    if (!sub.is_string() || !over.is_string()) bad("extension", "sub and over must be algebra names");
    const Algebra& n = table.get(sub.get<std::string>(), "extension.sub");
    const Algebra& m = table.get(over.get<std::string>(), "extension.over");
    const Json& map = need(ex, "map", "extension");
    if (!map.is_array() || static_cast<int>(map.size()) != n.dim())
        bad("extension.map", "expected " + std::to_string(n.dim()) + " images, one per basis element of " + sub.get<std::string>());
    Mat iota(m.dim(), n.dim());
    for (int c = 0; c < n.dim(); ++c)
        iota.set_col(c, as_vec(map[c], job.field, m.dim(), "extension.map[" + std::to_string(c) + "]"));
    std::string name = ex.contains("name") && ex.at("name").is_string() ? ex.at("name").get<std::string>()
                                                                       : sub.get<std::string>() + " in " + over.get<std::string>();
    try {
        job.ext = make_extension(n, m, iota, name);
    } catch (const AlgebraError& err) {
        bad("extension.map", err.what());
    }
    return job;
}

JobSpec parse_job_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw InputError(std::string("$: not valid JSON: ") + ex.what());
    }
    return parse_job(j);
}

JobSpec parse_job_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot read");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_job_text(ss.str());
}

// ---------------------------------------------------------------- jobs from extensions

namespace {

Json scalar_json(const Scalar& s) { return s.str(); }

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(scalar_json(x));
    return a;
}

Json mat_json(const Mat& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i)));
    return a;
}

Json structure_json(const Algebra& a) {
    Json mult = Json::array();
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (const auto& [k, c] : a.basis_product(i, j)) mult.push_back(Json::array({i, j, k, c.str()}));
    Json o;
    o["kind"] = "structure";
    o["dim"] = a.dim();
    o["unit"] = vec_json(a.unit());
    o["mult"] = std::move(mult);
    return o;
}

}  // namespace

Json job_json(const Extension& e, const std::vector<std::string>& tasks, uint64_t seed) {
    Json j;
    if (e.field().rational())
        j["field"] = {{"kind", "rational"}};
    else
        j["field"] = {{"kind", "prime"}, {"p", e.field().p}};
    j["algebras"]["N"] = structure_json(e.n);
    j["algebras"]["M"] = structure_json(e.m);
    Json map = Json::array();
    for (int c = 0; c < e.n.dim(); ++c) map.push_back(vec_json(e.iota.col(c)));
    j["extension"] = {{"name", e.name}, {"sub", "N"}, {"over", "M"}, {"map", std::move(map)}};
    j["tasks"] = tasks;
    j["seed"] = seed;
    j["checkLevel"] = "full";
    return j;
}

Json gallery_job(const std::string& name, uint64_t seed) {
    for (const auto& g : gallery())
        if (g.name == name) return job_json(gallery_extension(name, seed), {"analyze"}, seed);
    throw InputError("example: unknown gallery item '" + name + "'");
}

// ---------------------------------------------------------------- running

bool Report::alarm() const {
    for (const auto& c : checks)
        if (!c.ok) return true;
    return false;
}

int Report::exit_code() const {
    if (alarm()) return 2;
    return refusals.empty() ? 0 : 1;
}

namespace {

Json quasibasis_json(const Quasibasis& q) {
    Json b = Json::array(), beta = Json::array();
    for (const auto& x : q.b) b.push_back(vec_json(x));
    for (const auto& x : q.beta) beta.push_back(mat_json(x));
    return {{"size", q.size()}, {"b", std::move(b)}, {"beta", std::move(beta)}};
}

Json vecs_json(const std::vector<Vec>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(vec_json(v));
    return a;
}

// lazily built pieces shared by the tasks
class Pipeline {
public:
    Pipeline(const JobSpec& job, Report& rep) : job_(job), e_(job.ext), rep_(rep) {}

    const Chain& chain() {
        if (!chain_) chain_ = build_chain(e_);
        return *chain_;
    }
    const Profile& profile() {
        if (!profile_) profile_ = classify(e_, chain());
        return *profile_;
    }
    const Quasibasis* left() {
        const auto& p = profile();
        return p.left_qb ? &*p.left_qb : nullptr;
    }
    const Quasibasis* right() {
        const auto& p = profile();
        return p.right_qb ? &*p.right_qb : nullptr;
    }
    const ABialgebroid* a() {
        if (!a_ && left() && right()) a_ = bialgebroid_A(e_, chain(), *left(), *right());
        return a_ ? &*a_ : nullptr;
    }
    const BBialgebroid* b() {
        if (!b_ && left()) b_ = bialgebroid_B(e_, chain(), *left());
        return b_ ? &*b_ : nullptr;
    }
    const FrobeniusSystemSearch& frob() {
        if (!frob_) frob_ = find_frobenius_system(e_, job_.seed);
        return *frob_;
    }
    const Tower* tower() {
        if (!tower_ && frob().system) tower_ = build_tower(e_, *frob().system);
        return tower_ ? &*tower_ : nullptr;
    }
    const TowerMaps* maps() {
        if (!maps_ && tower()) maps_ = tower_maps(e_, chain(), *tower());
        return maps_ ? &*maps_ : nullptr;
    }
    const WeakHopfReport* weak() {
        if (!weak_ && frob().system && left() && a() && b())
            weak_ = weak_hopf_verify(e_, chain(), *frob().system, *left(), *a(), *b(), job_.seed);
        return weak_ ? &*weak_ : nullptr;
    }

    void check(const std::string& task, const std::string& name, bool ok, const std::string& where = "") {
        rep_.checks.push_back({task, name, ok, ok ? "" : (where.empty() ? "false" : where)});
    }
    void checks(const std::string& task, const std::vector<AxiomResult>& rs, const std::string& prefix = "") {
        for (const auto& r : rs) rep_.checks.push_back({task, prefix + r.name, r.ok, r.where});
    }
    void refuse(const std::string& task, const std::string& reason) { rep_.refusals.push_back({task, reason}); }
    bool full() const { return job_.level == CheckLevel::full; }
    const Extension& ext() const { return e_; }
    Report& report() { return rep_; }

private:
    const JobSpec& job_;
    const Extension& e_;
    Report& rep_;
    std::optional<Chain> chain_;
    std::optional<Profile> profile_;
    std::optional<ABialgebroid> a_;
    std::optional<BBialgebroid> b_;
    std::optional<FrobeniusSystemSearch> frob_;
    std::optional<Tower> tower_;
    std::optional<TowerMaps> maps_;
    std::optional<WeakHopfReport> weak_;
};

void task_analyze(Pipeline& p) {
    const Extension& e = p.ext();
    const Chain& c = p.chain();
    const Profile& pr = p.profile();
    Report& rep = p.report();
    HomSpace endr = end_right(e), endl = end_left(e);
    MoritaContext ctx = build_context(e, c, p.left());
    const auto& fs = p.frob();
    rep.dims = {{"N", pr.dim_n},   {"M", pr.dim_m},      {"R", pr.dim_r},       {"A", pr.dim_a},
                {"B", pr.dim_b},   {"C", ctx.c.dim()},   {"M(x)_N M", pr.dim_t2}, {"End M_N", endr.dim()},
                {"End _N M", endl.dim()}};
    if (fs.system) {
        rep.dims["M_1"] = pr.dim_t2;
        rep.dims["M_2"] = tensor_cube(e, c.t2).dim();
    } else {
        rep.dims["M_1"] = nullptr;
        rep.dims["M_2"] = nullptr;
    }
    Json& f = rep.flags;
    f["proper"] = pr.proper;
    f["irreducible"] = pr.dim_r == 1;
    f["left_d2"] = pr.left_d2;
    f["right_d2"] = pr.right_d2;
    f["h_separable"] = pr.h_separable;
    f["centrally_projective"] = pr.centrally_projective;
    f["split"] = pr.split;
    f["separable"] = pr.separable;
    f["left_projective"] = pr.left_projective;
    f["right_projective"] = pr.right_projective;
    f["left_qf"] = pr.left_qf;
    f["right_qf"] = pr.right_qf;
    f["balanced"] = pr.balanced;
    f["left_d3"] = pr.left_d3;
    f["right_d3"] = pr.right_d3;
    f["frobenius"] = fs.system ? Json(true) : fs.certified_none ? Json(false) : Json("unknown");
    // A ~ R through lambda, End M_N ~ M through lambda
    f["a_iso_r"] = pr.dim_a == pr.dim_r && rank(c.lambda_r) == pr.dim_r;
    {
        Mat lam(e.m.dim() * e.m.dim(), e.m.dim());
        for (int k = 0; k < e.m.dim(); ++k) lam.set_col(k, e.m.lmul_basis(k).flatten());
        bool inside = true;
        for (int k = 0; k < e.m.dim(); ++k) inside = inside && endr.flat.contains(lam.col(k));
        f["end_right_iso_m"] = inside && endr.dim() == e.m.dim() && rank(lam) == e.m.dim();
    }
    if (const ABialgebroid* a = p.a()) {
        InvariantsA inv = invariants_A(e, *a);
        f["invariants_equal_n"] = inv.equals_n;
        f["invariants_all_m"] = inv.by_counit.dim() == e.m.dim();
    } else {
        f["invariants_equal_n"] = nullptr;
        f["invariants_all_m"] = nullptr;
    }

    Json& w = rep.witnesses;
    w["left_quasibasis"] = pr.left_qb ? quasibasis_json(*pr.left_qb) : Json({{"none", "certified: no solution of the defining linear system"}});
    w["right_quasibasis"] = pr.right_qb ? quasibasis_json(*pr.right_qb) : Json({{"none", "certified: no solution of the defining linear system"}});
    w["h_separable"] = pr.h_separable_unit ? Json({{"generator", vec_json(*pr.h_separable_unit)}})
                                           : Json({{"none", "1 (x) 1 does not generate (M (x)_N M)^M as needed"}});
    w["split_map"] = pr.split_map ? Json(mat_json(*pr.split_map)) : Json({{"none", "no N-bimodule retraction of iota"}});
    w["separability_element"] = pr.separability ? Json(vec_json(*pr.separability)) : Json({{"none", "mu has no M-central preimage of 1"}});
    if (fs.system)
        w["frobenius_system"] = {{"E", mat_json(fs.system->e)}, {"x", vecs_json(fs.system->x)}, {"y", vecs_json(fs.system->y)}};
    else
        w["frobenius_system"] = {{"none", fs.certified_none ? "certified" : "unknown"}, {"reason", fs.note}};

    // cross-checks between formulations
    const std::string t = "analyze";
    p.check(t, "left D2: quasibasis <=> summand formulation", pr.left_d2 == d2_by_summand(e, c, true));
    p.check(t, "right D2: quasibasis <=> summand formulation", pr.right_d2 == d2_by_summand(e, c, false));
    p.check(t, "H-separable => D2", !pr.h_separable || (pr.left_d2 && pr.right_d2));
    p.check(t, "centrally projective => D2", !pr.centrally_projective || (pr.left_d2 && pr.right_d2));
    if (pr.left_qb) p.check(t, "left quasibasis verifies", check_quasibasis(e, c, *pr.left_qb).empty());
    if (pr.right_qb) p.check(t, "right quasibasis verifies", check_quasibasis(e, c, *pr.right_qb).empty());
    if (fs.system) p.check(t, "Frobenius system verifies", check_frobenius_system(e, *fs.system).empty());
}

void add_maps(Pipeline& p, const std::string& task, const std::vector<MapCheck>& ms) {
    for (const auto& m : ms) {
        std::string where = m.failure;
        if (where.empty() && !m.bijective) where = "rank " + std::to_string(m.rank);
        if (where.empty() && m.inverse_ok && !*m.inverse_ok) where = "stated inverse fails";
        p.check(task, m.name, m.ok(), where);
    }
}

void task_d2(Pipeline& p) {
    const std::string t = "d2";
    const Extension& e = p.ext();
    const Chain& c = p.chain();
    if (!p.left() && !p.right()) {
        p.refuse(t, "neither left nor right D2");
        return;
    }
    MoritaContext ctx = build_context(e, c, p.left());
    p.check(t, "mu_R: B (x)_R A -> C surjective", ctx.mu_surjective);
    add_maps(p, t, ctx.maps);
    for (const auto& f : ctx.failures) p.check(t, "Morita context law", false, f);
    if (p.left()) {
        ProgeneratorReport pg = progenerator_checks(e, c, *p.left());
        p.check(t, "alpha = sum_i lambda(psi(b_i)(alpha)) beta_i", pg.dual_basis_ok);
        p.check(t, "_R A generator and projective", pg.a_generator && pg.a_projective);
        p.check(t, "B_R generator and projective", pg.b_generator && pg.b_projective);
    } else {
        p.refuse(t, "not left D2: Morita inverses and progenerator checks skipped");
    }
    if (p.right()) add_maps(p, t, right_side_duals(e, c, *p.right()));
    for (const auto& ic : end_iso_props(e, c, p.left(), p.right())) p.check(t, ic.name, ic.ok, ic.failure);
}

void task_bialgebroid(Pipeline& p) {
    const std::string t = "bialgebroid";
    const Extension& e = p.ext();
    const Chain& c = p.chain();
    const ABialgebroid* a = p.a();
    const BBialgebroid* b = p.b();
    if (!a || !b) {
        p.refuse(t, "needs left and right D2 quasibases");
        return;
    }
    p.checks(t, verify_axioms(a->bg).results, "A: ");
    p.checks(t, verify_axioms(b->bg).results, "B: ");
    p.check(t, "A: the two coproduct formulas agree", a->coproducts_agree);
    p.check(t, "A: Lu bialgebroid recovered when N = K", a->lu_ok);
    p.checks(t, verify_action(a->bg, a->action), "A on M: ");
    p.checks(t, verify_action(b->bg, b->action), "B on End _N M: ");
    p.check(t, "B: iota onto (M (x)_N M (x)_N M)^N", b->iota_ok);
    p.check(t, "B: coproduct through iota", b->delta_via_iota);
    PairingReport pr = duality_pairing_check(e, c, *a, *b);
    p.checks(t, pr.eta, "pairing: ");
    p.checks(t, pr.psi, "pairing: ");
    p.report().witnesses["pairing_rank"] = pr.eta_rank;
    SmashIso si = smash_end_iso(e, *a);
    p.check(t, "M x A -> End M_N isomorphism", si.ok(), si.map_failure);
    InvariantsA inv = invariants_A(e, *a);
    p.check(t, "M^A by counit, rho and lambda agree", inv.agree);
    p.report().flags["B_invariants_are_rho"] = b->invariants_are_rho;
    if (!p.full()) {
        p.report().witnesses["duals"] = "skipped at check level fast";
        return;
    }
    if (auto rd = right_dual(a->bg)) {
        p.checks(t, verify_axioms(rd->bg).results, "A*: ");
        p.checks(t, right_dual_relations(a->bg, *rd), "A*: ");
    }
    if (auto ld = left_dual(a->bg)) {
        p.checks(t, verify_axioms(ld->bg).results, "*A: ");
        p.checks(t, left_dual_relations(a->bg, *ld), "*A: ");
        p.checks(t, double_dual_check(a->bg, *ld), "*A: ");
    }
}

void task_frobenius(Pipeline& p) {
    const std::string t = "frobenius";
    const Extension& e = p.ext();
    const auto& fs = p.frob();
    if (!fs.system) {
        p.refuse(t, fs.certified_none ? "not Frobenius (certified)" : "no Frobenius system found: " + fs.note);
        return;
    }
    const Tower& tw = *p.tower();
    Report& rep = p.report();
    rep.witnesses["tower"] = {{"M_1", tw.m1.dim()}, {"M_2", tw.m2.dim()}, {"M_1^N", tw.a_hat.dim()},
                              {"M_2^M", tw.b_hat.dim()}, {"M_2^N", tw.c_hat.dim()}, {"e_1", vec_json(tw.e1)},
                              {"e_2", vec_json(tw.e2)}};
    p.checks(t, verify_tower(e, tw));
    const TowerMaps& maps = *p.maps();
    p.checks(t, maps.checks);
    if (p.left() && p.a()) {
        D2FrobeniusReport d = d2_frobenius_props(e, p.chain(), tw, maps, *p.left(), *p.a());
        p.checks(t, d.checks);
        rep.flags["M_1|M_left_d2"] = d.m1_left_d2;
        rep.flags["M_1|M_right_d2"] = d.m1_right_d2;
        rep.flags["M_2^N_generated_by_e_2"] = d.c_hat_generated;
        if (p.full() && p.b()) p.checks(t, os_actions(e, tw, maps, *p.a(), *p.b()));
    } else {
        p.refuse(t, "not D2 on both sides: depth two Frobenius properties skipped");
    }
}

void task_hopf(Pipeline& p) {
    const std::string t = "hopf";
    const Extension& e = p.ext();
    if (p.chain().r.alg.dim() != 1) {
        p.refuse(t, "not irreducible: dim R = " + std::to_string(p.chain().r.alg.dim()));
        return;
    }
    const auto& fs = p.frob();
    if (!fs.system) {
        p.refuse(t, fs.certified_none ? "not Frobenius (certified)" : "no Frobenius system found");
        return;
    }
    if (!p.a() || !p.b()) {
        p.refuse(t, "not D2 on both sides");
        return;
    }
    HopfReport h = hopf_from_irreducible(e, p.chain(), *fs.system, *p.left(), *p.a(), *p.b());
    if (h.refused()) {
        p.refuse(t, h.refusal);
        return;
    }
    p.checks(t, h.weak.checks);
    p.checks(t, h.checks);
    p.checks(t, conjugation_identity(e, p.chain(), *p.tower(), *p.maps(), h));
    p.report().witnesses["hopf"] = {{"psi", vec_json(h.psi)}, {"antipode", mat_json(h.s)}};
    PairingIdentityReport pi = biseparable_pairing_check(e, p.chain(), p.profile(), *p.tower(), *p.maps());
    if (pi.refusal.empty())
        p.checks(t, pi.checks, "biseparable: ");
    else
        p.report().witnesses["hopf"]["biseparable_pairing"] = "not applicable: " + pi.refusal;
}

void task_weakhopf(Pipeline& p) {
    const std::string t = "weakhopf";
    const auto& fs = p.frob();
    if (!fs.system) {
        p.refuse(t, fs.certified_none ? "not Frobenius (certified)" : "no Frobenius system found");
        return;
    }
    if (!p.a() || !p.b()) {
        p.refuse(t, "not D2 on both sides");
        return;
    }
    const WeakHopfReport& w = *p.weak();
    if (w.refused()) {
        p.refuse(t, w.refusal);
        return;
    }
    p.checks(t, w.checks);
    SeparabilityReport sr = split_separable_criteria(p.ext(), p.chain(), *fs.system, p.profile(), w);
    p.checks(t, sr.checks);
    Json j;
    j["R_coordinates"] = {{"method", w.r_method}, {"phi", vec_json(w.r_coords.phi)}, {"e", vecs_json(w.r_coords.e)},
                          {"f", vecs_json(w.r_coords.f)}};
    j["A_delta_1"] = vec_json(w.a.coproduct(w.a.alg.unit()));
    j["A_genuinely_weak"] = w.a.genuinely_weak();
    j["integral_E"] = vec_json(w.integral);
    j["antipode_A"] = w.s_a ? Json(mat_json(*w.s_a)) : Json(nullptr);
    j["antipode_B"] = w.s_b ? Json(mat_json(*w.s_b)) : Json(nullptr);
    j["S_squared_identity"] = w.s_squared_identity;
    j["normalized_left_integral_A"] = sr.left_integral_a ? Json(vec_json(*sr.left_integral_a)) : Json(nullptr);
    j["normalized_right_integral_B"] = sr.right_integral_b ? Json(vec_json(*sr.right_integral_b)) : Json(nullptr);
    j["A_separable"] = sr.a_separable;
    j["B_separable"] = sr.b_separable;
    p.report().witnesses["weakhopf"] = std::move(j);
}

void task_qf(Pipeline& p) {
    QfReport q = qf_instance_check(p.profile());
    p.checks("qf", q.checks);
}

}  // namespace

Report run_job(const JobSpec& job) {
    Report rep;
    rep.extension = job.ext.name;
    rep.field = job.field.name();
    rep.seed = job.seed;
    rep.level = job.level == CheckLevel::full ? "full" : "fast";
    rep.tasks = job.tasks;
    Pipeline p(job, rep);
    static const std::map<std::string, std::function<void(Pipeline&)>> run{
        {"analyze", task_analyze}, {"d2", task_d2},         {"bialgebroid", task_bialgebroid}, {"frobenius", task_frobenius},
        {"hopf", task_hopf},       {"weakhopf", task_weakhopf}, {"qf", task_qf}};
    for (const auto& t : job.tasks) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            run.at(t)(p);
        } catch (const std::exception& ex) {
            rep.checks.push_back({t, "internal verification alarm", false, ex.what()});
        }
        auto t1 = std::chrono::steady_clock::now();
        rep.timing_ms.emplace_back(t, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return rep;
}

// ---------------------------------------------------------------- rendering

std::string render_json(const Report& r, bool timing) {
    Json j;
    j["tool"] = "d2kit";
    j["extension"] = r.extension;
    j["field"] = r.field;
    j["seed"] = r.seed;
    j["checkLevel"] = r.level;
    j["tasks"] = r.tasks;
    j["exit"] = r.exit_code();
    if (!r.dims.empty()) j["dims"] = r.dims;
    if (!r.flags.empty()) j["flags"] = r.flags;
    if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json x = {{"task", c.task}, {"name", c.name}, {"ok", c.ok}};
        if (!c.ok) x["where"] = c.where;
        checks.push_back(std::move(x));
    }
    if (!r.tasks.empty()) j["checks"] = std::move(checks);
    Json refusals = Json::array();
    for (const auto& x : r.refusals) refusals.push_back({{"task", x.task}, {"reason", x.reason}});
    if (!r.refusals.empty()) j["refusals"] = std::move(refusals);
    if (timing) {
        Json tm = Json::object();
        for (const auto& [k, v] : r.timing_ms) tm[k] = v;
        j["timing_ms"] = std::move(tm);
    }
    return j.dump(2) + "\n";
}

namespace {

std::string cell(const Json& v) {
    if (v.is_null()) return "-";
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::string render_markdown(const Report& r, bool timing) {
    std::ostringstream o;
    o << "# d2kit report: " << r.extension << "\n\n";
    o << "field " << r.field << ", seed " << r.seed << ", check level " << r.level << ", exit " << r.exit_code() << "\n";
    if (r.tasks.empty()) return o.str();
    o << "\ntasks: ";
    for (size_t i = 0; i < r.tasks.size(); ++i) o << (i ? ", " : "") << r.tasks[i];
    o << "\n";
    if (!r.dims.empty() || !r.flags.empty()) {
        o << "\n## Summary\n\n| quantity | value |\n|---|---|\n";
        for (const auto& [k, v] : r.dims.items()) o << "| dim " << k << " | " << cell(v) << " |\n";
        for (const auto& [k, v] : r.flags.items()) o << "| " << k << " | " << cell(v) << " |\n";
    }
    for (const auto& t : r.tasks) {
        o << "\n## " << t << "\n\n";
        for (const auto& x : r.refusals)
            if (x.task == t) o << "refused: " << x.reason << "\n\n";
        int n = 0, bad = 0;
        std::ostringstream rows;
        for (const auto& c : r.checks) {
            if (c.task != t) continue;
            ++n;
            if (!c.ok) ++bad;
            rows << "| " << c.name << " | " << (c.ok ? "pass" : "FAIL") << " | " << c.where << " |\n";
        }
        if (n) o << n - bad << "/" << n << " checks pass\n\n| check | result | first failure |\n|---|---|---|\n" << rows.str();
        for (const auto& [k, v] : r.timing_ms)
            if (timing && k == t) o << "\n" << static_cast<long>(v) << " ms\n";
    }
    return o.str();
}

}  // namespace d2
