#include "intlot/io.hpp"

#include "intlot/errors.hpp"

#include <cmath>
#include <fstream>

namespace intlot::io {

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer())
        return Scalar(BigRat(static_cast<long long>(j.get<std::int64_t>())));
    if (j.is_number_float()) return Scalar::real(j.get<double>());
    if (j.is_string()) return parse_scalar_literal(j.get<std::string>());
    if (j.is_object()) {
        BigRat q0(0);
        if (j.contains("q")) {
            const auto& q = j.at("q");
            q0 = q.is_string() ? BigRat::parse(q.get<std::string>())
                               : BigRat(static_cast<long long>(q.get<std::int64_t>()));
        }
        std::map<std::string, BigRat> terms;
        if (j.contains("terms")) {
            for (const auto& [name, coeff] : j.at("terms").items()) {
                terms[name] = coeff.is_string()
                                  ? BigRat::parse(coeff.get<std::string>())
                                  : BigRat(static_cast<long long>(coeff.get<std::int64_t>()));
            }
        }
        return Scalar::linear(std::move(q0), std::move(terms));
    }
    throw InputError("unrecognized scalar literal: " + j.dump());
}

json scalar_to_json(const Scalar& s) {
    switch (s.kind()) {
    case Scalar::Kind::rational:
        return json(s.rat().to_string());
    case Scalar::Kind::real:
        return json(s.dbl());
    case Scalar::Kind::linear: {
        json out = json::object();
        if (!s.rational_part().is_zero()) out["q"] = s.rational_part().to_string();
        json terms = json::object();
        for (const auto& [name, coeff] : s.terms()) terms[name] = coeff.to_string();
        out["terms"] = std::move(terms);
        return out;
    }
    }
    throw InvariantViolation("unreachable scalar kind");
}

namespace {

int state_index(const json& j, const std::vector<std::string>& states) {
    if (j.is_number_integer()) {
        int one_based = j.get<int>();
        if (one_based < 1 || one_based > static_cast<int>(states.size()))
            throw InputError("state index out of range: " + j.dump());
        return one_based - 1;
    }
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<int>(i);
        throw InputError("unknown state name '" + name + "'");
    }
    throw InputError("state reference must be a name or 1-based index");
}

} // namespace

market::MarketModel model_from_json(const json& j) {
    market::MarketModel m;
    if (!j.is_object()) throw InputError("model file must contain a JSON object");
    if (!j.contains("states")) throw InputError("model: missing 'states'");
    if (j.at("states").is_number_integer()) {
        int n = j.at("states").get<int>();
        for (int i = 1; i <= n; ++i) m.states.push_back("w" + std::to_string(i));
    } else {
        for (const auto& s : j.at("states")) m.states.push_back(s.get<std::string>());
    }
    const int n = m.n();

    if (j.contains("probabilities")) {
        for (const auto& p : j.at("probabilities"))
            m.probabilities.push_back(scalar_from_json(p));
    } else {
        for (int i = 0; i < n; ++i) m.probabilities.push_back(Scalar(BigRat(1, n)));
    }
    m.rate = j.contains("rate") ? scalar_from_json(j.at("rate")) : Scalar(0);
    if (!j.contains("periods")) throw InputError("model: missing 'periods'");
    m.periods = j.at("periods").get<int>();

    if (j.contains("constants")) {
        for (const auto& [name, text] : j.at("constants").items()) {
            std::string expansion = text.get<std::string>();
            auto dot = expansion.find('.');
            std::size_t digits = expansion.size() - (dot == std::string::npos ? 0 : 1) -
                                 (expansion[0] == '-' ? 1 : 0);
            if (digits < 50)
                throw InputError("constant '" + name +
                                 "' needs at least 50 significant digits");
            m.constants[name] = expansion;
        }
    }

    if (!j.contains("assets") || !j.at("assets").is_array() || j.at("assets").empty())
        throw InputError("model: missing 'assets'");
    for (const auto& asset : j.at("assets")) {
        m.asset_names.push_back(asset.contains("name")
                                    ? asset.at("name").get<std::string>()
                                    : "S" + std::to_string(m.asset_names.size() + 1));
        if (!asset.contains("prices")) throw InputError("asset: missing 'prices'");
        std::vector<std::vector<Scalar>> rows;
        for (const auto& row : asset.at("prices")) {
            std::vector<Scalar> r;
            for (const auto& v : row) r.push_back(scalar_from_json(v));
            if (static_cast<int>(r.size()) != n)
                throw InputError("asset price row length must equal the state count");
            rows.push_back(std::move(r));
        }
        if (static_cast<int>(rows.size()) != m.periods + 1)
            throw InputError("asset needs price rows for times 0..T");
        m.prices.push_back(std::move(rows));
    }

    if (j.contains("filtration")) {
        for (const auto& part : j.at("filtration")) {
            std::vector<std::vector<int>> blocks;
            for (const auto& block : part) {
                std::vector<int> b;
                for (const auto& st : block) b.push_back(state_index(st, m.states));
                blocks.push_back(std::move(b));
            }
            m.filtration.push_back(std::move(blocks));
        }
    } else if (m.periods == 1) {
        m.filtration = market::MarketModel::default_filtration(n, 1);
    } else {
        throw InputError("models with more than one period need an explicit filtration");
    }
    return m;
}

json model_to_json(const market::MarketModel& m) {
    json j;
    j["states"] = m.states;
    json probs = json::array();
    for (const auto& p : m.probabilities) probs.push_back(scalar_to_json(p));
    j["probabilities"] = std::move(probs);
    j["rate"] = scalar_to_json(m.rate);
    j["periods"] = m.periods;
    if (!m.constants.empty()) {
        json c = json::object();
        for (const auto& [name, text] : m.constants) c[name] = text;
        j["constants"] = std::move(c);
    }
    json assets = json::array();
    for (int a = 0; a < m.d(); ++a) {
        json asset;
        asset["name"] = m.asset_names[static_cast<std::size_t>(a)];
        json rows = json::array();
        for (const auto& row : m.prices[static_cast<std::size_t>(a)]) {
            json r = json::array();
            for (const auto& v : row) r.push_back(scalar_to_json(v));
            rows.push_back(std::move(r));
        }
        asset["prices"] = std::move(rows);
        assets.push_back(std::move(asset));
    }
    j["assets"] = std::move(assets);
    json filt = json::array();
    for (const auto& part : m.filtration) {
        json p = json::array();
        for (const auto& block : part) {
            json b = json::array();
            for (int s : block) b.push_back(m.states[static_cast<std::size_t>(s)]);
            p.push_back(std::move(b));
        }
        filt.push_back(std::move(p));
    }
    j["filtration"] = std::move(filt);
    return j;
}

market::Claim claim_from_json(const json& j, int n) {
    if (!j.is_object() || !j.contains("payoff"))
        throw InputError("claim file must contain a 'payoff' array");
    market::Claim c;
    for (const auto& v : j.at("payoff")) c.payoff.push_back(scalar_from_json(v));
    if (static_cast<int>(c.payoff.size()) != n)
        throw InputError("claim payoff length must equal the state count");
    return c;
}

json claim_to_json(const market::Claim& c) {
    json j;
    json payoff = json::array();
    for (const auto& v : c.payoff) payoff.push_back(scalar_to_json(v));
    j["payoff"] = std::move(payoff);
    return j;
}

std::vector<Scalar> measure_from_json(const json& j, int n) {
    const json& arr = j.is_object() && j.contains("measure") ? j.at("measure") : j;
    if (!arr.is_array()) throw InputError("measure file must contain an array");
    std::vector<Scalar> out;
    for (const auto& v : arr) out.push_back(scalar_from_json(v));
    if (static_cast<int>(out.size()) != n)
        throw InputError("measure length must equal the state count");
    return out;
}

std::vector<std::vector<Scalar>> process_from_json(const json& j, int periods, int n) {
    if (!j.is_object() || !j.contains("values"))
        throw InputError("extension file must contain a 'values' array");
    std::vector<std::vector<Scalar>> out;
    for (const auto& row : j.at("values")) {
        std::vector<Scalar> r;
        for (const auto& v : row) r.push_back(scalar_from_json(v));
        if (static_cast<int>(r.size()) != n)
            throw InputError("extension row length must equal the state count");
        out.push_back(std::move(r));
    }
    if (static_cast<int>(out.size()) != periods + 1)
        throw InputError("extension needs value rows for times 0..T");
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("parse error in '" + path + "': " + e.what());
    }
    return j;
}

market::MarketModel load_model(const std::string& path) {
    return model_from_json(load_json_file(path));
}

market::Claim load_claim(const std::string& path, int n) {
    return claim_from_json(load_json_file(path), n);
}

} // namespace intlot::io
