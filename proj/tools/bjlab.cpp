// bjlab: decide Birkhoff-James orthogonality, classify symmetric points, and
// replay the structural theorem suites from the command line.
//
// Exit codes: 0 affirmative (orthogonal / symmetric in the requested
// direction / counterexample found / every suite passed), 1 negative,
// 2 oracle disagreement (a bug report bundle goes to stderr), 64 usage
// errors, 65 bad input data.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bjlab/theorems.hpp>

namespace {

using bjlab::json;
using bjlab::Space;
using bjlab::vec;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input that parsed fine but cannot be processed (zero vector, non-unit
// point without --normalize, unreadable file); exits 65 rather than 64
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t seed = bjlab::kDefaultSeed;
    long budget = bjlab::kDefaultBudget;
    long trials = 200;
    double tol_rel = bjlab::kTolRel;
    double tol_norm = bjlab::kTolNorm;
    std::string output = "json";
    bool no_timestamp = false;
    bool normalize = false;
};

std::string iso_utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void stamp(json& doc, const Options& opt) {
    if (!opt.no_timestamp) doc["timestamp"] = iso_utc_now();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt(double v) { return bjlab::format_double(v); }

// Vectors arrive as JSON arrays ("[1,0.5]") or bare comma lists ("1,0.5").
vec parse_vec(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        json arr;
        try {
            arr = json::parse(text);
        } catch (const json::parse_error& e) {
            throw bjlab::parse_error(std::string("bad vector: ") + e.what());
        }
        if (!arr.is_array()) throw bjlab::parse_error("vector must be a JSON array");
        vec out;
        for (const auto& v : arr) {
            if (!v.is_number()) throw bjlab::parse_error("vector entries must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
    vec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        std::string cell = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        const std::size_t a = cell.find_first_not_of(" \t");
        const std::size_t b = cell.find_last_not_of(" \t");
        if (a == std::string::npos) throw bjlab::parse_error("empty vector entry");
        cell = cell.substr(a, b - a + 1);
        double v = 0;
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
            throw bjlab::parse_error("bad vector entry '" + cell + "'");
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

bjlab::Operator load_operator(const std::string& path, const std::string& dom_desc,
                              const std::string& cod_desc) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return bjlab::operator_from_json(json::parse(text));
    if (dom_desc.empty() || cod_desc.empty())
        throw usage_error("csv matrices need --domain and --codomain descriptors");
    return bjlab::matrix_from_csv(Space::parse(dom_desc), Space::parse(cod_desc), text);
}

void emit(const json& doc, const Options& opt, const std::string& human,
          const std::vector<std::string>& csv_lines) {
    if (opt.output == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (opt.output == "csv") {
        for (const auto& l : csv_lines) std::cout << l << "\n";
    } else {
        std::cout << human;
    }
}

// ---------------------------------------------------------------------------
// check-ortho

int cmd_check_ortho(const Options& opt, const std::string& space_desc, const std::string& xs,
                    const std::string& ys, const std::string& op_t, const std::string& op_s,
                    const std::string& dom_desc, const std::string& cod_desc) {
    json doc{{"command", "check-ortho"}};
    std::string human;
    std::vector<std::string> csv;
    bjlab::Decision decision = bjlab::Decision::inconclusive;

    if (!op_t.empty() || !op_s.empty()) {
        if (op_t.empty() || op_s.empty()) throw usage_error("operator mode needs both --op-t and --op-s");
        const bjlab::Operator T = load_operator(op_t, dom_desc, cod_desc);
        const bjlab::Operator S = load_operator(op_s, dom_desc, cod_desc);
        const bjlab::OrthoVerdict v = bjlab::ortho_operators_rank1(T, S, opt.tol_norm);
        decision = v.decision;
        doc["op_t"] = bjlab::operator_to_json(T);
        doc["op_s"] = bjlab::operator_to_json(S);
        doc["verdict"] = bjlab::to_json(v);
        doc["decision"] = bjlab::to_string(v.decision);

        if (v.min) {
            const double tn = bjlab::operator_norm(T);
            const bool min_orth = v.min->value >= tn * (1.0 - 1e-9);
            const bool min_not = v.min->value < tn * (1.0 - 1e-6);
            if ((min_orth && v.decision == bjlab::Decision::not_orthogonal) ||
                (min_not && v.decision == bjlab::Decision::orthogonal)) {
                json bundle{{"error", "oracle_disagreement"},
                            {"op_t", bjlab::operator_to_json(T)},
                            {"op_s", bjlab::operator_to_json(S)},
                            {"attainment", bjlab::to_json(v)},
                            {"operator_norm", tn}};
                std::cerr << bundle.dump(2) << "\n";
                return 2;
            }
        }
        human = "decision: " + std::string(bjlab::to_string(v.decision)) + "\n";
        if (v.range)
            human += "range: [" + fmt(v.range->lo) + ", " + fmt(v.range->hi) + "]\n";
        if (v.min)
            human += "line minimum: " + fmt(v.min->value) + " at t = " + fmt(v.min->lambda_star) + "\n";
        csv.push_back("decision,range_lo,range_hi,min_value,min_lambda");
        csv.push_back(std::string(bjlab::to_string(v.decision)) + "," +
                      (v.range ? fmt(v.range->lo) : "") + "," + (v.range ? fmt(v.range->hi) : "") +
                      "," + (v.min ? fmt(v.min->value) : "") + "," +
                      (v.min ? fmt(v.min->lambda_star) : ""));
    } else {
        if (space_desc.empty() || xs.empty() || ys.empty())
            throw usage_error("check-ortho needs <space> <x> <y>, or --op-t and --op-s");
        const Space S = Space::parse(space_desc);
        const vec x = parse_vec(xs), y = parse_vec(ys);
        bjlab::check_dim(S, x, "check-ortho");
        bjlab::check_dim(S, y, "check-ortho");
        if (!(bjlab::norm(S, x) > 0)) throw data_error("x must be nonzero");

        const bjlab::OrthoVerdict fn = bjlab::is_bj_functional(S, x, y, opt.tol_norm);
        const bjlab::OrthoVerdict mn = bjlab::is_bj_min(S, x, y, opt.tol_rel);
        // the block criterion reads any space as a sup sum, single block if needed
        const Space wrap = S.kind() == Space::Kind::sup_sum ? S : Space::sup_sum({S});
        const bjlab::OrthoVerdict bl = bjlab::supsum_orthogonal(wrap, x, y, opt.tol_norm);

        const bool mn_conclusive = mn.decision != bjlab::Decision::inconclusive;
        if (fn.decision != bl.decision || (mn_conclusive && mn.decision != fn.decision)) {
            json bundle{{"error", "oracle_disagreement"},
                        {"space", S.to_string()},
                        {"x", bjlab::to_json(x)},
                        {"y", bjlab::to_json(y)},
                        {"functional", bjlab::to_json(fn)},
                        {"block", bjlab::to_json(bl)},
                        {"min", bjlab::to_json(mn)}};
            std::cerr << bundle.dump(2) << "\n";
            return 2;
        }
        decision = fn.decision;
        doc["space"] = S.to_string();
        doc["x"] = bjlab::to_json(x);
        doc["y"] = bjlab::to_json(y);
        doc["decision"] = bjlab::to_string(decision);
        doc["oracles"] = json{{"functional", bjlab::to_json(fn)},
                              {"block", bjlab::to_json(bl)},
                              {"min", bjlab::to_json(mn)}};
        human = "decision: " + std::string(bjlab::to_string(decision)) + "\n";
        if (fn.range) human += "J-range of y: [" + fmt(fn.range->lo) + ", " + fmt(fn.range->hi) + "]\n";
        if (mn.min)
            human += "line minimum: " + fmt(mn.min->value) + " at lambda = " +
                     fmt(mn.min->lambda_star) + " (" + bjlab::to_string(mn.decision) + ")\n";
        csv.push_back("decision,functional,block,min,range_lo,range_hi,min_value,min_lambda");
        csv.push_back(std::string(bjlab::to_string(decision)) + "," + bjlab::to_string(fn.decision) +
                      "," + bjlab::to_string(bl.decision) + "," + bjlab::to_string(mn.decision) +
                      "," + (fn.range ? fmt(fn.range->lo) : "") + "," +
                      (fn.range ? fmt(fn.range->hi) : "") + "," + (mn.min ? fmt(mn.min->value) : "") +
                      "," + (mn.min ? fmt(mn.min->lambda_star) : ""));
    }

    stamp(doc, opt);
    emit(doc, opt, human, csv);
    return decision == bjlab::Decision::orthogonal ? 0 : 1;
}

// ---------------------------------------------------------------------------
// classify

// Unit-norm precondition shared by classify and search: a non-unit input is
// accepted only under --normalize, which rescales and reports the fact.
void require_unit_or_normalize(const Space& S, vec& x, const Options& opt, json& doc) {
    const double nx = bjlab::norm(S, x);
    if (std::fabs(nx - 1.0) <= bjlab::kTolForm) {
        doc["normalized"] = false;
        return;
    }
    if (!opt.normalize)
        throw data_error("input has norm " + fmt(nx) +
                                        "; pass --normalize or supply a unit vector");
    for (auto& c : x) c /= nx;
    doc["normalized"] = true;
}

struct DirectionVerdict {
    std::optional<bool> closed_form;
    bjlab::SearchOutcome search;
    std::optional<bjlab::SymWitness> witness;
    bool symmetric = false;     // closed form when present, else search
    bool disagreement = false;  // closed form accepted but a verified counterexample exists
};

DirectionVerdict classify_direction(const Space& S, const vec& xh, bool left_dir,
                                    const Options& opt) {
    DirectionVerdict d;
    try {
        d.closed_form = left_dir ? bjlab::classify_left_value(S, xh)
                                 : bjlab::classify_right_value(S, xh);
    } catch (const bjlab::unsupported_space&) {
        // no closed form for this space; the search decides
    }
    d.search = left_dir ? bjlab::search_left_counterexample(S, xh, opt.budget, opt.seed)
                        : bjlab::search_right_counterexample(S, xh, opt.budget, opt.seed);
    if (S.kind() == Space::Kind::sup_sum && d.closed_form && !*d.closed_form) {
        d.witness = left_dir ? bjlab::witness_left_supsum(S, xh, opt.seed, opt.budget)
                             : bjlab::witness_right_supsum(S, xh, opt.budget, opt.seed);
    }
    d.symmetric = d.closed_form ? *d.closed_form : !d.search.found;
    d.disagreement = d.closed_form && *d.closed_form && d.search.found;
    return d;
}

json direction_to_json(const DirectionVerdict& d) {
    return json{{"closed_form", d.closed_form ? json(*d.closed_form) : json()},
                {"search", bjlab::to_json(d.search)},
                {"symmetric", d.symmetric}};
}

int cmd_classify(const Options& opt, const std::string& space_desc, const std::string& xs,
                 const std::string& op_path, const std::string& dom_desc,
                 const std::string& cod_desc, const std::string& direction) {
    json doc{{"command", "classify"}, {"direction", direction}};
    std::string human;
    std::vector<std::string> csv;
    const bool want_left = direction != "right";
    const bool want_right = direction != "left";
    bool left = true, right = true;

    Space S = Space::lp(2.0, 1);
    vec x;
    if (!op_path.empty()) {
        bjlab::Operator T = load_operator(op_path, dom_desc, cod_desc);
        doc["op"] = bjlab::operator_to_json(T);
        const bool by_columns = T.domain.is_lp(1.0);
        if (!by_columns && !T.codomain.is_lp(bjlab::kInf))
            throw bjlab::unsupported_space("classify needs an l_1 domain or an l_inf codomain");
        doc["route"] = by_columns ? "l1_domain" : "linf_codomain";
        auto emb = by_columns ? bjlab::embed_l1_domain(T) : bjlab::embed_linf_codomain(T);
        S = std::move(emb.first);
        x = std::move(emb.second);
    } else {
        if (space_desc.empty() || xs.empty()) throw usage_error("classify needs <space> <x>, or --op");
        S = Space::parse(space_desc);
        x = parse_vec(xs);
        bjlab::check_dim(S, x, "classify");
        doc["space"] = S.to_string();
        doc["x"] = bjlab::to_json(x);
    }

    if (!(bjlab::norm(S, x) > bjlab::kTolForm)) {
        // zero is orthogonal to everything in both orders
        doc["zero"] = true;
        if (want_left) doc["left"] = json{{"closed_form", true}, {"search", json()}, {"symmetric", true}};
        if (want_right) doc["right"] = json{{"closed_form", true}, {"search", json()}, {"symmetric", true}};
        doc["symmetric"] = true;
        stamp(doc, opt);
        emit(doc, opt, "zero operator or vector: symmetric\n",
             {"left,right,symmetric", "true,true,true"});
        return 0;
    }
    require_unit_or_normalize(S, x, opt, doc);

    json witnesses;
    bool disagreement = false;
    std::optional<DirectionVerdict> dl, dr;
    if (want_left) {
        dl = classify_direction(S, x, true, opt);
        left = dl->symmetric;
        doc["left"] = direction_to_json(*dl);
        witnesses["left"] = dl->witness ? bjlab::witness_to_json(S, x, *dl->witness, "left") : json();
        disagreement = disagreement || dl->disagreement;
    }
    if (want_right) {
        dr = classify_direction(S, x, false, opt);
        right = dr->symmetric;
        doc["right"] = direction_to_json(*dr);
        witnesses["right"] = dr->witness ? bjlab::witness_to_json(S, x, *dr->witness, "right") : json();
        disagreement = disagreement || dr->disagreement;
    }
    doc["witnesses"] = std::move(witnesses);
    if (want_left && want_right) doc["symmetric"] = left && right;

    if (disagreement) {
        json bundle{{"error", "classifier_disagreement"}, {"doc", doc}};
        std::cerr << bundle.dump(2) << "\n";
        return 2;
    }

    auto dir_line = [&](const char* name, const DirectionVerdict& d) {
        std::string s = std::string(name) + " symmetric: " + (d.symmetric ? "yes" : "no");
        if (d.closed_form) s += " (closed form)";
        else s += " (search only)";
        if (d.search.found)
            s += ", counterexample margin " + fmt(d.search.margin);
        return s + "\n";
    };
    if (dl) human += dir_line("left", *dl);
    if (dr) human += dir_line("right", *dr);
    if (want_left && want_right)
        human += std::string("symmetric: ") + (left && right ? "yes" : "no") + "\n";
    csv.push_back("left,right,symmetric");
    csv.push_back(std::string(want_left ? (left ? "true" : "false") : "") + "," +
                  (want_right ? (right ? "true" : "false") : "") + "," +
                  (want_left && want_right ? (left && right ? "true" : "false") : ""));

    stamp(doc, opt);
    emit(doc, opt, human, csv);
    const bool verdict = direction == "left" ? left : direction == "right" ? right : (left && right);
    return verdict ? 0 : 1;
}

// ---------------------------------------------------------------------------
// search-counterexample

json outcome_with_verification(const Space& S, const vec& xh, const bjlab::SearchOutcome& s,
                               bool left_direction) {
    json j = bjlab::to_json(s);
    if (s.found) {
        // left direction: x holds orthogonal to y, y fails back; right: mirrored
        const vec& holder = left_direction ? xh : s.y;
        const vec& failer = left_direction ? s.y : xh;
        j["verification"] = json{
            {"forward", bjlab::to_json(bjlab::is_bj_functional(S, holder, failer))},
            {"reverse_min",
             bjlab::to_json(bjlab::is_bj_min(S, failer, holder))}};
    }
    return j;
}

int cmd_search(const Options& opt, const std::string& space_desc, const std::string& xs,
               const std::string& op_path, const std::string& dom_desc,
               const std::string& cod_desc, const std::string& direction) {
    if (direction.empty())
        throw usage_error("search-counterexample needs a direction (left or right)");
    const bool left = direction == "left";
    json doc{{"command", "search-counterexample"},
             {"direction", direction},
             {"budget", opt.budget},
             {"seed", opt.seed}};
    std::string human;
    std::vector<std::string> csv;
    bjlab::SearchOutcome s;

    if (!op_path.empty()) {
        const bjlab::Operator T = load_operator(op_path, dom_desc, cod_desc);
        const bool by_columns = T.domain.is_lp(1.0);
        if (!by_columns && !T.codomain.is_lp(bjlab::kInf))
            throw bjlab::unsupported_space("operator search needs an l_1 domain or an l_inf codomain");
        const std::string route = by_columns ? "l1_domain" : "linf_codomain";
        const auto [Semb, tup] =
            by_columns ? bjlab::embed_l1_domain(T) : bjlab::embed_linf_codomain(T);
        if (!(bjlab::norm(Semb, tup) > 0)) throw data_error("operator must be nonzero");
        s = left ? bjlab::search_left_counterexample(Semb, tup, opt.budget, opt.seed)
                 : bjlab::search_right_counterexample(Semb, tup, opt.budget, opt.seed);
        doc["op"] = bjlab::operator_to_json(T);
        doc["route"] = route;
        const vec xh = bjlab::detail::normalized(Semb, tup);
        doc["outcome"] = outcome_with_verification(Semb, xh, s, left);
        if (s.found) {
            // lift the embedded counterexample tuple back to matrix entries
            vec entries(T.entries.size());
            if (route == "l1_domain") {
                for (std::size_t j = 0; j < T.cols(); ++j)
                    for (std::size_t i = 0; i < T.rows(); ++i)
                        entries[i * T.cols() + j] = s.y[j * T.rows() + i];
            } else {
                entries = s.y;
            }
            doc["counterexample_op"] =
                bjlab::operator_to_json(bjlab::make_operator(T.domain, T.codomain, std::move(entries)));
        }
    } else {
        if (space_desc.empty() || xs.empty())
            throw usage_error("search-counterexample needs <space> <x> <direction>, or --op");
        const Space S = Space::parse(space_desc);
        const vec x = parse_vec(xs);
        bjlab::check_dim(S, x, "search-counterexample");
        if (!(bjlab::norm(S, x) > 0)) throw data_error("x must be nonzero");
        s = left ? bjlab::search_left_counterexample(S, x, opt.budget, opt.seed)
                 : bjlab::search_right_counterexample(S, x, opt.budget, opt.seed);
        doc["space"] = S.to_string();
        doc["x"] = bjlab::to_json(x);
        doc["outcome"] = outcome_with_verification(S, bjlab::detail::normalized(S, x), s, left);
    }

    if (s.found) {
        human = "counterexample found after " + std::to_string(s.rounds_used) + " rounds\n" +
                "reverse minimum " + fmt(s.reverse_value) + " at lambda = " + fmt(s.lambda_star) +
                " (margin " + fmt(s.margin) + ")\n";
    } else {
        human = "no counterexample in " + std::to_string(s.rounds_used) + " rounds (best ratio " +
                fmt(s.best_ratio) + ")\n";
    }
    csv.push_back("found,rounds_used,best_ratio,lambda_star,reverse_value,margin");
    csv.push_back(std::string(s.found ? "true" : "false") + "," + std::to_string(s.rounds_used) +
                  "," + fmt(s.best_ratio) + "," + (s.found ? fmt(s.lambda_star) : "") + "," +
                  (s.found ? fmt(s.reverse_value) : "") + "," + (s.found ? fmt(s.margin) : ""));

    stamp(doc, opt);
    emit(doc, opt, human, csv);
    return s.found ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify-theorem and list-theorems

int cmd_verify(const Options& opt, const std::string& id) {
    bjlab::RunConfig cfg;
    cfg.seed = opt.seed;
    cfg.trials = opt.trials;
    cfg.budget = opt.budget;
    cfg.tol_rel = opt.tol_rel;
    cfg.tol_norm = opt.tol_norm;

    std::vector<const bjlab::TheoremSuite*> picks;
    if (id == "all") {
        for (const auto& s : bjlab::theorem_suites()) picks.push_back(&s);
    } else {
        const auto* s = bjlab::find_theorem(id);
        if (!s) {
            std::string known;
            for (const auto& t : bjlab::theorem_suites()) known += std::string("  ") + t.id + "\n";
            throw usage_error("unknown theorem id '" + id + "'; known ids:\n" + known);
        }
        picks.push_back(s);
    }

    json doc{{"command", "verify-theorem"},
             {"config", json{{"seed", cfg.seed},
                             {"trials", cfg.trials},
                             {"budget", cfg.budget},
                             {"tol_rel", cfg.tol_rel},
                             {"tol_norm", cfg.tol_norm}}}};
    json reports = json::array();
    std::string human;
    std::vector<std::string> csv;
    csv.push_back(opt.no_timestamp ? "theorem_id,ok,trials,passes,failed,inconclusive"
                                   : "theorem_id,ok,trials,passes,failed,inconclusive,wall_time");
    bool all_ok = true;
    for (const auto* s : picks) {
        const bjlab::TheoremReport rep = bjlab::run_theorem(*s, cfg);
        all_ok = all_ok && rep.ok();
        reports.push_back(bjlab::to_json(rep, !opt.no_timestamp));
        human += rep.theorem_id + ": " + (rep.ok() ? "pass" : "FAIL") +
                 " (trials=" + std::to_string(rep.trials) + ", passes=" + std::to_string(rep.passes) +
                 ", failed=" + std::to_string(rep.failed) +
                 ", inconclusive=" + std::to_string(rep.inconclusive) + ")";
        if (!opt.no_timestamp) human += " [" + fmt(rep.wall_time) + " s]";
        human += "\n";
        if (!rep.ok()) human += "  failures: " + rep.failures.dump() + "\n";
        std::string line = rep.theorem_id + "," + (rep.ok() ? "true" : "false") + "," +
                           std::to_string(rep.trials) + "," + std::to_string(rep.passes) + "," +
                           std::to_string(rep.failed) + "," + std::to_string(rep.inconclusive);
        if (!opt.no_timestamp) line += "," + fmt(rep.wall_time);
        csv.push_back(std::move(line));
    }
    doc["reports"] = std::move(reports);

    stamp(doc, opt);
    emit(doc, opt, human, csv);
    return all_ok ? 0 : 1;
}

int cmd_list(const Options& opt) {
    json doc{{"command", "list-theorems"}};
    json arr = json::array();
    std::string human;
    std::vector<std::string> csv;
    csv.push_back("theorem_id,statement");
    for (const auto& s : bjlab::theorem_suites()) {
        arr.push_back(json{{"theorem_id", s.id}, {"statement", s.statement}});
        human += std::string(s.id) + "\n  " + s.statement + "\n";
        csv.push_back(std::string(s.id) + "," + csv_escape(s.statement));
    }
    doc["theorems"] = std::move(arr);
    stamp(doc, opt);
    emit(doc, opt, human, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff-James orthogonality and symmetric point laboratory"};
    app.require_subcommand(1);

    Options opt;
    bool seed_given = false;
    app.add_option_function<std::uint64_t>(
           "--seed", [&](std::uint64_t v) { opt.seed = v; seed_given = true; },
           "random stream seed (default: BJLAB_SEED or 1000003)");
    app.add_option("--budget", opt.budget, "search round budget")->check(CLI::PositiveNumber);
    app.add_option("--trials", opt.trials, "trials per theorem suite")->check(CLI::PositiveNumber);
    app.add_option("--tol-rel", opt.tol_rel, "relative tolerance of the convex oracle");
    app.add_option("--tol-norm", opt.tol_norm, "absolute tolerance on unit scale");
    app.add_option("--output", opt.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    app.add_flag("--no-timestamp", opt.no_timestamp, "omit timestamps and timings for byte stable output");

    std::string space_desc, xs, ys, op_t, op_s, op_path, dom_desc, cod_desc;
    std::string direction = "both", search_direction, theorem_id;

    auto* co = app.add_subcommand("check-ortho", "decide whether x is B-orthogonal to y");
    co->fallthrough();
    co->add_option("space", space_desc, "space descriptor, e.g. lp(3,2) or sup(lp(1,2),lp(inf,2))");
    co->add_option("x", xs, "coordinates of x as a JSON array or comma list");
    co->add_option("y", ys, "coordinates of y as a JSON array or comma list");
    co->add_option("--op-t", op_t, "operator T file (json envelope or csv matrix)");
    co->add_option("--op-s", op_s, "operator S file (json envelope or csv matrix)");
    co->add_option("--domain", dom_desc, "domain descriptor for csv matrices");
    co->add_option("--codomain", cod_desc, "codomain descriptor for csv matrices");

    auto* cl = app.add_subcommand("classify", "classify a point or operator as left/right symmetric");
    cl->fallthrough();
    cl->add_option("space", space_desc, "space descriptor");
    cl->add_option("x", xs, "coordinates as a JSON array or comma list");
    cl->add_option("--op", op_path, "operator file (json envelope or csv matrix)");
    cl->add_option("--domain", dom_desc, "domain descriptor for csv matrices");
    cl->add_option("--codomain", cod_desc, "codomain descriptor for csv matrices");
    cl->add_option("--direction", direction, "which property decides the exit code")
        ->check(CLI::IsMember({"left", "right", "both"}));
    cl->add_flag("--normalize", opt.normalize, "rescale a non-unit input instead of rejecting it");

    auto* sc = app.add_subcommand("search-counterexample", "hunt for a one-sided orthogonality witness");
    sc->fallthrough();
    sc->add_option("space", space_desc, "space descriptor");
    sc->add_option("x", xs, "coordinates as a JSON array or comma list");
    sc->add_option("direction,--direction", search_direction, "left or right symmetry to refute")
        ->check(CLI::IsMember({"left", "right"}));
    sc->add_option("--op", op_path, "operator file (json envelope or csv matrix)");
    sc->add_option("--domain", dom_desc, "domain descriptor for csv matrices");
    sc->add_option("--codomain", cod_desc, "codomain descriptor for csv matrices");

    auto* vt = app.add_subcommand("verify-theorem", "replay a theorem suite on random instances");
    vt->fallthrough();
    vt->add_option("id", theorem_id, "theorem id from list-theorems, or 'all'")->required();

    auto* lt = app.add_subcommand("list-theorems", "list the available theorem suites");
    lt->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return 64;
    }

    if (!seed_given) {
        if (const char* env = std::getenv("BJLAB_SEED")) {
            std::uint64_t v = 0;
            const std::string s(env);
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                std::cerr << "BJLAB_SEED must be an unsigned integer\n";
                return 64;
            }
            opt.seed = v;
        }
    }

    try {
        if (co->parsed()) return cmd_check_ortho(opt, space_desc, xs, ys, op_t, op_s, dom_desc, cod_desc);
        if (cl->parsed()) return cmd_classify(opt, space_desc, xs, op_path, dom_desc, cod_desc, direction);
        if (sc->parsed()) return cmd_search(opt, space_desc, xs, op_path, dom_desc, cod_desc, search_direction);
        if (vt->parsed()) return cmd_verify(opt, theorem_id);
        if (lt->parsed()) return cmd_list(opt);
    } catch (const usage_error& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const bjlab::parse_error& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const bjlab::invalid_descriptor& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump(2) << "\n";
        return 65;
    }
    return 64;
}
