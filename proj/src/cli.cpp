#include "intlot/cli.hpp"

#include "intlot/arbitrage.hpp"
#include "intlot/errors.hpp"
#include "intlot/example_models.hpp"
#include "intlot/hedging.hpp"
#include "intlot/io.hpp"
#include "intlot/lattice.hpp"
#include "intlot/pricing.hpp"
#include "intlot/varhedge.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace intlot::cli {

namespace {

using io::json;
using market::Claim;
using market::MarketModel;

constexpr int kOk = 0, kInput = 2, kFails = 3, kInconclusive = 4, kInternal = 5;

Scalar parse_price_argument(const std::string& text) {
    // Accepts a JSON literal ({"terms": ...}) or the plain grammar.
    if (!text.empty() && text[0] == '{') return io::scalar_from_json(json::parse(text));
    return parse_scalar_literal(text);
}

std::string decimal(const Scalar& s, const NumericContext& ctx, int digits = 12) {
    if (s.exact_zero()) return "0";
    return s.to_decimal(digits, ctx);
}

json strategy_json(const MarketModel& m, const market::Strategy& s,
                   const NumericContext& ctx) {
    json out;
    out["initial_value"] = io::scalar_to_json(s.initial_value);
    json positions = json::array();
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t)
            for (int b = 0; b < m.num_blocks(t - 1); ++b) {
                Scalar v = s.position(j, t, b);
                if (v.is_exact() ? v.exact_zero() : v.sign(ctx) == 0) continue;
                json p;
                p["asset"] = m.asset_names[static_cast<std::size_t>(j)];
                p["period"] = t;
                p["block"] = b;
                p["units"] = io::scalar_to_json(v);
                positions.push_back(std::move(p));
            }
    out["positions"] = std::move(positions);
    return out;
}

void print_strategy(std::ostream& os, const MarketModel& m, const market::Strategy& s,
                    const NumericContext& ctx) {
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t)
            for (int b = 0; b < m.num_blocks(t - 1); ++b) {
                Scalar v = s.position(j, t, b);
                if (v.is_exact() ? v.exact_zero() : v.sign(ctx) == 0) continue;
                os << "    " << m.asset_names[static_cast<std::size_t>(j)] << " t=" << t
                   << " block=" << b << ": " << v.to_string() << "\n";
            }
}

std::string verdict_name(arb::Verdict v) {
    switch (v) {
    case arb::Verdict::holds: return "holds";
    case arb::Verdict::fails: return "fails";
    case arb::Verdict::no_witness_within_budget: return "no-witness-within-budget";
    }
    return "?";
}

std::vector<std::string> excluded_names(const MarketModel& m,
                                        const std::vector<int>& excluded) {
    std::vector<std::string> out;
    for (int s : excluded) out.push_back(m.states[static_cast<std::size_t>(s)]);
    return out;
}

int exit_for_verdict(arb::Verdict v) {
    switch (v) {
    case arb::Verdict::holds: return kOk;
    case arb::Verdict::fails: return kFails;
    case arb::Verdict::no_witness_within_budget: return kInconclusive;
    }
    return kInternal;
}

MarketModel load_model_checked(const std::string& path) {
    MarketModel m = io::load_model(path);
    auto violations = market::validate_model(m);
    if (!violations.empty()) {
        std::string msg = "invalid model '" + path + "':";
        for (const auto& v : violations) msg += "\n  [" + v.code + "] " + v.message;
        throw InputError(msg);
    }
    return m;
}

// ---- check ------------------------------------------------------------

int cmd_check(const std::string& model_path, const std::string& property, long long radius,
              bool as_json, std::ostream& out) {
    MarketModel m = load_model_checked(model_path);
    NumericContext ctx = m.context();

    arb::Verdict verdict;
    std::vector<int> excluded;
    std::optional<market::Strategy> witness;
    std::string note;
    if (property == "na" || property == "nifl") {
        arb::NaReport rep = property == "na" ? arb::na_check(m) : arb::nifl_check(m);
        verdict = rep.holds ? arb::Verdict::holds : arb::Verdict::fails;
        excluded = rep.support.excluded;
        witness = rep.witness;
        note = rep.note;
    } else {
        arb::SearchPolicy policy;
        policy.radius = radius;
        arb::ArbitrageReport rep = arb::nia_check(m, policy);
        verdict = rep.verdict;
        excluded = rep.support.excluded;
        witness = rep.witness;
        note = rep.note;
    }

    if (as_json) {
        json j;
        j["schema"] = 1;
        j["command"] = "check";
        j["property"] = property;
        j["verdict"] = verdict_name(verdict);
        j["excluded_states"] = excluded_names(m, excluded);
        if (!note.empty()) j["note"] = note;
        if (witness) j["witness"] = strategy_json(m, *witness, ctx);
        out << j.dump(2) << "\n";
    } else {
        std::string prop = property;
        for (auto& c : prop) c = static_cast<char>(std::toupper(c));
        out << prop << " " << verdict_name(verdict) << "";
        auto names = excluded_names(m, excluded);
        out << "; excluded states A = {";
        for (std::size_t i = 0; i < names.size(); ++i)
            out << (i ? ", " : "") << names[i];
        out << "}\n";
        if (!note.empty()) out << "  note: " << note << "\n";
        if (witness) {
            out << "  witness:\n";
            print_strategy(out, m, *witness, ctx);
        }
    }
    return exit_for_verdict(verdict);
}

// ---- price ------------------------------------------------------------

std::string openness(pricing::Openness o) {
    switch (o) {
    case pricing::Openness::open: return "open";
    case pricing::Openness::closed: return "closed";
    case pricing::Openness::unknown: return "unknown";
    }
    return "?";
}

json interval_json(const pricing::PriceInterval& iv, const NumericContext& ctx) {
    json j;
    j["lo"] = io::scalar_to_json(iv.lo);
    j["hi"] = io::scalar_to_json(iv.hi);
    j["lo_decimal"] = decimal(iv.lo, ctx);
    j["hi_decimal"] = decimal(iv.hi, ctx);
    j["lo_openness"] = openness(iv.lo_open);
    j["hi_openness"] = openness(iv.hi_open);
    j["replicable"] = iv.replicable;
    j["proven_empty"] = iv.empty;
    return j;
}

int cmd_price(const std::string& model_path, const std::string& claim_path,
              const std::string& member, const std::string& extension_path,
              long long radius, bool as_json, std::ostream& out) {
    MarketModel m = load_model_checked(model_path);
    Claim c = io::load_claim(claim_path, m.n());
    NumericContext ctx = m.context();
    arb::SearchPolicy policy;
    policy.radius = radius;

    if (!extension_path.empty()) {
        auto process =
            io::process_from_json(io::load_json_file(extension_path), m.periods, m.n());
        arb::ArbitrageReport rep = pricing::extension_nia_check(m, c, process, policy);
        if (as_json) {
            json j;
            j["schema"] = 1;
            j["command"] = "price";
            j["extension_verdict"] = verdict_name(rep.verdict);
            if (!rep.note.empty()) j["note"] = rep.note;
            if (rep.witness) j["witness"] = strategy_json(pricing::extend_model(m, process),
                                                          *rep.witness, ctx);
            out << j.dump(2) << "\n";
        } else {
            out << "extension NIA " << verdict_name(rep.verdict) << "\n";
            if (!rep.note.empty()) out << "  note: " << rep.note << "\n";
        }
        return exit_for_verdict(rep.verdict);
    }

    pricing::PriceInterval envelope = pricing::nia_price_interval(m, c);
    std::optional<pricing::PriceInterval> classical;
    if (arb::na_check(m).holds) classical = pricing::classical_price_bounds(m, c);

    std::optional<pricing::MembershipResult> membership;
    Scalar member_price;
    if (!member.empty()) {
        member_price = parse_price_argument(member);
        membership = pricing::price_membership(m, c, member_price, policy);
    }

    if (as_json) {
        json j;
        j["schema"] = 1;
        j["command"] = "price";
        if (classical) j["classical"] = interval_json(*classical, ctx);
        j["nia_envelope"] = interval_json(envelope, ctx);
        if (membership) {
            j["member_price"] = io::scalar_to_json(member_price);
            j["membership"] = membership->verdict == pricing::Membership::member
                                  ? "member"
                                  : membership->verdict == pricing::Membership::not_member
                                        ? "not-member"
                                        : "unknown-within-budget";
            if (!membership->note.empty()) j["membership_note"] = membership->note;
        }
        out << j.dump(2) << "\n";
    } else {
        if (classical)
            out << "classical price interval: (" << classical->lo.to_string() << ", "
                << classical->hi.to_string() << ")  ~ (" << decimal(classical->lo, ctx)
                << ", " << decimal(classical->hi, ctx) << ")\n";
        out << "integer-arbitrage-free envelope: [" << envelope.lo.to_string() << ", "
            << envelope.hi.to_string() << "]  ~ [" << decimal(envelope.lo, ctx) << ", "
            << decimal(envelope.hi, ctx) << "]"
            << (envelope.empty ? "  (price set proven empty)" : "") << "\n";
        if (membership) {
            out << "price " << member_price.to_string() << ": ";
            switch (membership->verdict) {
            case pricing::Membership::member: out << "member\n"; break;
            case pricing::Membership::not_member: out << "not-member\n"; break;
            case pricing::Membership::unknown_within_budget:
                out << "unknown-within-budget\n";
                break;
            }
            if (!membership->note.empty()) out << "  note: " << membership->note << "\n";
        }
    }
    if (membership) {
        switch (membership->verdict) {
        case pricing::Membership::member: return kOk;
        case pricing::Membership::not_member: return kFails;
        case pricing::Membership::unknown_within_budget: return kInconclusive;
        }
    }
    return kOk;
}

// ---- hedge ------------------------------------------------------------

std::string status_name(hedge::HedgeStatus s) {
    switch (s) {
    case hedge::HedgeStatus::certified_optimal: return "certified-optimal";
    case hedge::HedgeStatus::optimal_within_radius: return "optimal-within-radius";
    case hedge::HedgeStatus::epsilon_approximate: return "epsilon-approximate";
    }
    return "?";
}

int cmd_hedge(const std::string& model_path, const std::string& claim_path,
              const std::string& direction_name, const std::string& cls,
              std::optional<long long> radius, const std::string& denom_bound,
              const std::string& eps, const std::string& copies_list, bool as_json,
              std::ostream& out) {
    MarketModel m = load_model_checked(model_path);
    Claim c = io::load_claim(claim_path, m.n());
    NumericContext ctx = m.context();
    hedge::Direction dir =
        direction_name == "sub" ? hedge::Direction::sub : hedge::Direction::super;

    if (!copies_list.empty()) {
        std::vector<long long> ns;
        std::stringstream ss(copies_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) ns.push_back(std::stoll(tok));
        hedge::IntegerHedgePolicy policy;
        policy.radius = radius;
        auto rows = hedge::copies_scaling(m, c, ns, policy);
        if (as_json) {
            json j;
            j["schema"] = 1;
            j["command"] = "hedge";
            json arr = json::array();
            for (const auto& row : rows) {
                json r;
                r["copies"] = row.copies;
                r["per_copy_price"] = io::scalar_to_json(row.per_copy_price);
                r["per_copy_gap"] = io::scalar_to_json(row.gap);
                arr.push_back(std::move(r));
            }
            j["copies"] = std::move(arr);
            out << j.dump(2) << "\n";
        } else {
            out << "copies | per-copy integer price | gap to classical\n";
            for (const auto& row : rows)
                out << row.copies << " | " << row.per_copy_price.to_string() << " | "
                    << row.gap.to_string() << "\n";
        }
        return kOk;
    }

    hedge::HedgeResult res;
    if (cls == "integer") {
        hedge::IntegerHedgePolicy policy;
        policy.radius = radius;
        res = hedge::integer_hedge(m, c, dir, policy);
    } else if (cls == "rational") {
        if (!denom_bound.empty()) {
            if (dir != hedge::Direction::super)
                throw InputError("denominator-bounded hedging is a superhedge construction");
            res = hedge::rational_denominator_superhedge(m, c,
                                                         BigInt::from_string(denom_bound));
        } else {
            BigRat e = eps.empty() ? BigRat(1, 100) : BigRat::parse(eps);
            res = hedge::rational_eps_hedge(m, c, dir, e);
        }
    } else {
        res = hedge::real_hedge(m, c, dir);
    }

    if (as_json) {
        json j;
        j["schema"] = 1;
        j["command"] = "hedge";
        j["direction"] = direction_name;
        j["class"] = cls;
        j["price"] = io::scalar_to_json(res.price);
        j["price_decimal"] = decimal(res.price, ctx);
        j["status"] = status_name(res.status);
        if (res.radius > 0) j["radius"] = res.radius;
        if (!res.denominator.is_one()) j["denominator"] = res.denominator.to_string();
        if (!res.buffer.exact_zero()) j["buffer"] = io::scalar_to_json(res.buffer);
        j["strategy"] = strategy_json(m, res.strategy, ctx);
        out << j.dump(2) << "\n";
    } else {
        out << (dir == hedge::Direction::super ? "super" : "sub") << "hedge (" << cls
            << "): price " << res.price.to_string() << " ~ " << decimal(res.price, ctx)
            << "  [" << status_name(res.status) << "]\n";
        print_strategy(out, m, res.strategy, ctx);
    }
    return kOk;
}

// ---- varhedge ----------------------------------------------------------

int cmd_varhedge(const std::string& model_path, const std::string& claim_path,
                 const std::string& measure_path, const std::string& copies_list,
                 const std::string& method, bool as_json, std::ostream& out) {
    MarketModel m = load_model_checked(model_path);
    Claim c = io::load_claim(claim_path, m.n());

    std::vector<Scalar> measure;
    bool defaulted = false;
    if (!measure_path.empty()) {
        measure = io::measure_from_json(io::load_json_file(measure_path), m.n());
    } else {
        arb::NaReport na = arb::na_check(m);
        if (!na.holds || na.support.witness_measure.empty())
            throw InputError("no pricing measure given and the model has no "
                             "equivalent martingale measure");
        for (const auto& v : na.support.witness_measure) measure.emplace_back(v);
        defaulted = true;
    }

    std::vector<long long> ns{1};
    if (!copies_list.empty()) {
        ns.clear();
        std::stringstream ss(copies_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) ns.push_back(std::stoll(tok));
    }

    if (method == "all") {
        varhedge::VarHedgeReport rep = varhedge::var_hedge_report(m, c, measure, ns);
        if (as_json) {
            json j;
            j["schema"] = 1;
            j["command"] = "varhedge";
            j["measure_defaulted"] = defaulted;
            json rows = json::array();
            for (const auto& row : rep.rows) {
                json r;
                r["copies"] = row.copies;
                r["classical_rmse"] = row.classical.rmse;
                r["classical_position_size"] = row.classical.weighted_exposure;
                r["cvp_rmse"] = row.cvp.rmse;
                r["cvp_position_size"] = row.cvp.max_position;
                r["cvp_positions"] = row.cvp.int_positions;
                r["rounding_rmse"] = row.rounding.rmse;
                r["rounding_position_size"] = row.rounding.max_position;
                r["rounding_positions"] = row.rounding.int_positions;
                rows.push_back(std::move(r));
            }
            j["rows"] = std::move(rows);
            out << j.dump(2) << "\n";
        } else {
            if (defaulted)
                out << "(pricing measure defaulted to the maximal-support martingale "
                       "measure)\n";
            out << varhedge::render_table(rep);
        }
        return kOk;
    }

    for (long long n : ns) {
        varhedge::VarHedgeProblem p{m, c, measure, n};
        varhedge::VarHedgeResult res = method == "classical" ? classical_var_hedge(p)
                                       : method == "cvp"     ? integer_var_hedge(p)
                                                             : rounded_var_hedge(p);
        if (as_json) {
            json j;
            j["schema"] = 1;
            j["command"] = "varhedge";
            j["copies"] = n;
            j["method"] = method;
            j["rmse"] = res.rmse;
            j["initial_value"] = res.initial_value;
            if (method == "classical") j["positions"] = res.positions;
            else j["positions"] = res.int_positions;
            out << j.dump(2) << "\n";
        } else {
            out << "N=" << n << " " << method << ": rMSE " << res.rmse << ", positions";
            if (method == "classical")
                for (double v : res.positions) out << " " << v;
            else
                for (long long v : res.int_positions) out << " " << v;
            out << "\n";
        }
    }
    return kOk;
}

// ---- lattice debug ------------------------------------------------------

std::vector<std::vector<double>> read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("matrix file '" + path + "' is empty");
    return rows;
}

int cmd_lattice_lll(const std::string& matrix_path, const std::string& delta, bool as_json,
                    std::ostream& out) {
    lattice::LatticeBasis basis;
    basis.generators = read_matrix(matrix_path);
    BigRat d = delta.empty() ? BigRat(99, 100) : BigRat::parse(delta);
    lattice::LLLResult res = lattice::lll_reduce(basis, d);
    if (as_json) {
        json j;
        j["schema"] = 1;
        j["command"] = "lattice-lll";
        j["reduced"] = res.reduced.generators;
        j["transform"] = res.transform;
        out << j.dump(2) << "\n";
    } else {
        out << "reduced basis:\n";
        for (const auto& row : res.reduced.generators) {
            for (double v : row) out << " " << v;
            out << "\n";
        }
        out << "transform:\n";
        for (const auto& row : res.transform) {
            for (long long v : row) out << " " << v;
            out << "\n";
        }
    }
    return kOk;
}

int cmd_lattice_cvp(const std::string& matrix_path, const std::string& target_path,
                    bool as_json, std::ostream& out) {
    lattice::LatticeBasis basis;
    basis.generators = read_matrix(matrix_path);
    auto trows = read_matrix(target_path);
    lattice::CVPResult res = lattice::cvp_closest(basis, trows[0]);
    if (as_json) {
        json j;
        j["schema"] = 1;
        j["command"] = "lattice-cvp";
        j["coefficients"] = res.coefficients;
        j["point"] = res.point;
        j["distance"] = std::sqrt(res.distance2);
        out << j.dump(2) << "\n";
    } else {
        out << "coefficients:";
        for (long long v : res.coefficients) out << " " << v;
        out << "\ndistance: " << std::sqrt(res.distance2) << "\n";
    }
    return kOk;
}

// ---- examples -----------------------------------------------------------

struct BundledExample {
    std::string name;
    MarketModel model;
    std::vector<std::pair<std::string, Claim>> claims;
    std::string blurb;
};

std::vector<BundledExample> bundled_examples() {
    std::vector<BundledExample> out;
    out.push_back({"gap", examples::gap_model(), {{"gap_c", examples::gap_claim()}},
                   "binary model where the integer superhedge costs twice the "
                   "classical price"});
    out.push_back({"sqrt2", examples::sqrt2_model(),
                   {{"sqrt2_ci", examples::sqrt2_claim_i()},
                    {"sqrt2_cii", examples::sqrt2_claim_ii()},
                    {"sqrt2_ciii", examples::sqrt2_claim_iii()},
                    {"sqrt2_civ", examples::sqrt2_claim_iv()}},
                   "three-state model whose price-interval endpoints come and go"});
    out.push_back({"empty_pi", examples::empty_pi_model(),
                   {{"empty_pi_c", examples::empty_pi_claim()}},
                   "pi-linked pair with an empty integer price set"});
    out.push_back({"dense", examples::dense_model(), {{"dense_c", examples::dense_claim()}},
                   "two-period model with a dense non-interval price set"});
    out.push_back({"no_cheapest", examples::no_cheapest_model(),
                   {{"no_cheapest_c", examples::no_cheapest_claim()}},
                   "sqrt2 pair with no cheapest integer superhedge"});
    out.push_back({"table1", examples::table1_model(),
                   {{"table1_c", examples::table1_claim()}},
                   "variance-optimal hedging benchmark"});
    out.push_back({"corollary", examples::corollary_model(), {},
                   "pi pair certified integer-arbitrage-free by its zero-gain space"});
    return out;
}

int cmd_examples(const std::string& which, const std::string& export_dir, bool as_json,
                 std::ostream& out) {
    if (which == "table2") {
        auto rep = varhedge::var_hedge_report(examples::table1_model(),
                                              examples::table1_claim(),
                                              examples::table1_pstar(),
                                              {1, 5, 10, 20, 30, 40, 50});
        if (as_json) {
            json j;
            j["schema"] = 1;
            j["command"] = "examples";
            json rows = json::array();
            for (const auto& row : rep.rows) {
                json r;
                r["copies"] = row.copies;
                r["classical_rmse"] = row.classical.rmse;
                r["classical_position_size"] = row.classical.weighted_exposure;
                r["cvp_rmse"] = row.cvp.rmse;
                r["cvp_position_size"] = row.cvp.max_position;
                r["rounding_rmse"] = row.rounding.rmse;
                r["rounding_position_size"] = row.rounding.max_position;
                rows.push_back(std::move(r));
            }
            j["rows"] = std::move(rows);
            out << j.dump(2) << "\n";
        } else {
            out << varhedge::render_table(rep);
        }
        return kOk;
    }
    if (which == "list") {
        for (const auto& e : bundled_examples()) out << e.name << ": " << e.blurb << "\n";
        return kOk;
    }
    if (which == "export") {
        if (export_dir.empty()) throw InputError("export needs a directory argument");
        for (const auto& e : bundled_examples()) {
            std::ofstream mf(export_dir + "/models/" + e.name + ".json");
            if (!mf) throw InputError("cannot write into '" + export_dir + "/models'");
            mf << io::model_to_json(e.model).dump(2) << "\n";
            for (const auto& [cname, claim] : e.claims) {
                std::ofstream cf(export_dir + "/claims/" + cname + ".json");
                if (!cf) throw InputError("cannot write into '" + export_dir + "/claims'");
                cf << io::claim_to_json(claim).dump(2) << "\n";
            }
        }
        out << "exported " << bundled_examples().size() << " models\n";
        return kOk;
    }
    throw InputError("unknown examples action '" + which +
                     "' (expected table2, list, or export)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"integer-constrained no-arbitrage analytics"};
    app.require_subcommand(1);
    long long seed = 0;
    app.add_option("--seed", seed, "seed for randomized property commands");

    // check
    auto* check = app.add_subcommand("check", "arbitrage properties of a model");
    std::string check_model, check_property = "nia";
    long long check_radius = 50;
    bool check_json = false;
    check->add_option("model", check_model)->required();
    check->add_option("--property", check_property)
        ->check(CLI::IsMember({"na", "nia", "nifl"}));
    check->add_option("--radius", check_radius);
    check->add_flag("--json", check_json);

    // price
    auto* price = app.add_subcommand("price", "claim price intervals and membership");
    std::string price_model, price_claim, price_member, price_ext;
    long long price_radius = 50;
    bool price_json = false;
    price->add_option("model", price_model)->required();
    price->add_option("claim", price_claim)->required();
    price->add_option("--member", price_member);
    price->add_option("--extension", price_ext);
    price->add_option("--radius", price_radius);
    price->add_flag("--json", price_json);

    // hedge
    auto* hed = app.add_subcommand("hedge", "super- and subhedging");
    std::string hedge_model, hedge_claim, hedge_dir = "super", hedge_cls = "real";
    std::string hedge_denom, hedge_eps, hedge_copies;
    long long hedge_radius = -1;
    bool hedge_json = false;
    hed->add_option("model", hedge_model)->required();
    hed->add_option("claim", hedge_claim)->required();
    hed->add_option("--direction", hedge_dir)->check(CLI::IsMember({"super", "sub"}));
    hed->add_option("--class", hedge_cls)
        ->check(CLI::IsMember({"real", "rational", "integer"}));
    hed->add_option("--radius", hedge_radius);
    hed->add_option("--denom-bound", hedge_denom);
    hed->add_option("--eps", hedge_eps);
    hed->add_option("--copies", hedge_copies);
    hed->add_flag("--json", hedge_json);

    // varhedge
    auto* var = app.add_subcommand("varhedge", "one-period variance-optimal hedging");
    std::string var_model, var_claim, var_measure, var_copies, var_method = "all";
    bool var_json = false;
    var->add_option("model", var_model)->required();
    var->add_option("claim", var_claim)->required();
    var->add_option("--measure", var_measure);
    var->add_option("--copies", var_copies);
    var->add_option("--method", var_method)
        ->check(CLI::IsMember({"all", "classical", "cvp", "round"}));
    var->add_flag("--json", var_json);

    // lattice
    auto* lat = app.add_subcommand("lattice", "lattice debugging helpers");
    auto* lll = lat->add_subcommand("lll", "reduce a basis");
    std::string lll_matrix, lll_delta;
    bool lll_json = false;
    lll->add_option("matrix", lll_matrix)->required();
    lll->add_option("--delta", lll_delta);
    lll->add_flag("--json", lll_json);
    auto* cvp = lat->add_subcommand("cvp", "closest lattice point");
    std::string cvp_matrix, cvp_target;
    bool cvp_json = false;
    cvp->add_option("matrix", cvp_matrix)->required();
    cvp->add_option("target", cvp_target)->required();
    cvp->add_flag("--json", cvp_json);

    // examples
    auto* exs = app.add_subcommand("examples", "bundled example suite");
    std::string ex_which = "list", ex_dir;
    bool ex_json = false;
    exs->add_option("action", ex_which);
    exs->add_option("dir", ex_dir);
    exs->add_flag("--json", ex_json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "argument error: " << e.what() << "\n";
        return kInput;
    }

    try {
        if (*check)
            return cmd_check(check_model, check_property, check_radius, check_json, out);
        if (*price)
            return cmd_price(price_model, price_claim, price_member, price_ext,
                             price_radius, price_json, out);
        if (*hed)
            return cmd_hedge(hedge_model, hedge_claim, hedge_dir, hedge_cls,
                             hedge_radius < 0 ? std::nullopt
                                              : std::optional<long long>(hedge_radius),
                             hedge_denom, hedge_eps, hedge_copies, hedge_json, out);
        if (*var)
            return cmd_varhedge(var_model, var_claim, var_measure, var_copies, var_method,
                                var_json, out);
        if (*lat) {
            if (*lll) return cmd_lattice_lll(lll_matrix, lll_delta, lll_json, out);
            if (*cvp) return cmd_lattice_cvp(cvp_matrix, cvp_target, cvp_json, out);
            err << "lattice needs a subcommand (lll or cvp)\n";
            return kInput;
        }
        if (*exs) return cmd_examples(ex_which, ex_dir, ex_json, out);
        err << "no command selected\n";
        return kInput;
    } catch (const ModelHasArbitrage& e) {
        err << "fails: " << e.what() << "\n";
        return kFails;
    } catch (const ModelHasIntegerArbitrage& e) {
        err << "fails: " << e.what() << "\n";
        return kFails;
    } catch (const BudgetExceeded& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const PrecisionExhausted& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const SearchFailed& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const InvariantViolation& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInput;
    }
}

} // namespace intlot::cli
