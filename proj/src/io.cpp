#include "rauzy/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rauzy {

using nlohmann::json;

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

std::vector<std::int64_t> parse_digits(const std::string& s) {
    std::vector<std::int64_t> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = strip(tok);
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw ConfigError("digits list is empty");
    return out;
}

} // namespace

std::unique_ptr<IWordSource> parse_source_config(const std::string& text,
                                                 const std::string& base_dir) {
    const auto kv = parse_kv(text);
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("missing key: " + key);
        return it->second;
    };
    const std::string type = get("type");
    if (type == "purely_morphic" || type == "morphic") {
        std::filesystem::path mp(get("morphism"));
        if (mp.is_relative()) mp = std::filesystem::path(base_dir) / mp;
        MorphismFile mf = load_morphism_file(mp.string());
        if (!mf.seed) throw ConfigError("morphism file has no seed: line");
        if (type == "morphic") {
            if (!mf.coding) throw ConfigError("morphic source needs coding rules (x => image)");
            return std::make_unique<MorphicSource>(mf.morphism, *mf.seed, *mf.coding);
        }
        return std::make_unique<PurelyMorphicSource>(mf.morphism, *mf.seed);
    }
    if (type == "sturmian_cf") {
        const std::string rule = kv.count("digit_rule") ? kv.at("digit_rule") : "cycle";
        std::unique_ptr<DigitStream> ds;
        if (rule == "ramp") ds = std::make_unique<RampDigits>();
        else if (rule == "cycle") ds = std::make_unique<CycleDigits>(parse_digits(get("digits")));
        else throw ConfigError("unknown digit_rule: " + rule);
        const bool swap = kv.count("swap") && kv.at("swap") == "1";
        return std::make_unique<SturmianCFSource>(std::move(ds), swap);
    }
    if (type == "eventually_periodic") {
        const std::string pre = kv.count("preperiod") ? kv.at("preperiod") : "";
        return std::make_unique<EventuallyPeriodicSource>(pre, get("period"));
    }
    throw ConfigError("unknown source type: " + type);
}

std::unique_ptr<IWordSource> load_source_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open source config: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    // A morphism file passed directly acts as a (purely) morphic source.
    if (text.find("->") != std::string::npos) {
        MorphismFile mf = parse_morphism_text(text);
        if (!mf.seed) throw ConfigError("morphism file has no seed: line");
        if (mf.coding)
            return std::make_unique<MorphicSource>(mf.morphism, *mf.seed, *mf.coding);
        return std::make_unique<PurelyMorphicSource>(mf.morphism, *mf.seed);
    }
    return parse_source_config(text, std::filesystem::path(path).parent_path().string());
}

// ---------------------------------------------------------------------------

std::string scheme_to_json(const Scheme& s) {
    json j;
    j["schema"] = "rauzy.scheme/1";
    j["vertices"] = json::array();
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
        const auto& vx = s.vertex(static_cast<int>(v));
        j["vertices"].push_back({
            {"id", v},
            {"role", vx.role == VertexRole::Collecting ? "collecting" : "distributing"},
            {"overlap", vx.overlap},
            {"window", s.window(static_cast<int>(v))},
        });
    }
    j["edges"] = json::array();
    for (const auto& e : s.edges()) {
        j["edges"].push_back({
            {"number", e.number},
            {"tail", e.tail},
            {"head", e.head},
            {"word", e.word},
            {"front", s.front_word(e.number)},
            {"back", s.back_word(e.number)},
        });
    }
    return j.dump(2);
}

Scheme scheme_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("schema", "") != "rauzy.scheme/1")
        throw ConfigError("unexpected scheme schema");
    std::vector<Scheme::Vertex> vertices;
    for (const auto& jv : j.at("vertices")) {
        Scheme::Vertex v;
        v.role = jv.at("role").get<std::string>() == "collecting" ? VertexRole::Collecting
                                                                  : VertexRole::Distributing;
        v.overlap = jv.at("overlap").get<std::int64_t>();
        vertices.push_back(v);
    }
    std::vector<Scheme::Edge> edges;
    for (const auto& je : j.at("edges")) {
        Scheme::Edge e;
        e.number = je.at("number").get<int>();
        e.tail = je.at("tail").get<int>();
        e.head = je.at("head").get<int>();
        e.word = je.at("word").get<std::string>();
        e.origin = {Constituent::old_edge(e.number)};
        edges.push_back(std::move(e));
    }
    return Scheme(std::move(vertices), std::move(edges));
}

namespace {

json light_to_json(const LightScheme& l) {
    json edges = json::array();
    for (const auto& [t, h] : l.edges) edges.push_back({t, h});
    return json{{"vertices", l.vertex_count}, {"edges", edges}};
}

LightScheme light_from_json(const json& j) {
    LightScheme l;
    l.vertex_count = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges"))
        l.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return l;
}

} // namespace

std::string protocol_to_json(const Protocol& p) {
    json j;
    j["schema"] = "rauzy.protocol/1";
    j["source"] = p.source;
    j["k0"] = p.k0;
    j["clean_order"] = p.clean_order;
    j["steps_requested"] = p.steps_requested;
    j["entries"] = json::array();
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        const auto& e = p.entries[i];
        json rejected = json::array();
        for (const auto& [a, b] : e.rejected) rejected.push_back({a, b});
        j["entries"].push_back({
            {"step", i},
            {"light", light_to_json(e.light)},
            {"support", e.support},
            {"rejected", rejected},
            {"scale", p.scales.at(i)},
        });
    }
    j["aborted"] = p.abort_reason ? json(*p.abort_reason) : json(nullptr);
    if (p.detection) {
        j["detection"] = {{"preperiod", p.detection->preperiod},
                          {"period", p.detection->period},
                          {"repetitions", p.detection->repetitions}};
    } else {
        j["detection"] = nullptr;
    }
    return j.dump(2);
}

Protocol protocol_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("schema", "") != "rauzy.protocol/1")
        throw ConfigError("unexpected protocol schema");
    Protocol p;
    p.source = j.at("source").get<std::string>();
    p.k0 = j.at("k0").get<std::int64_t>();
    p.clean_order = j.at("clean_order").get<std::int64_t>();
    p.steps_requested = j.at("steps_requested").get<std::int64_t>();
    for (const auto& je : j.at("entries")) {
        ProtocolEntry e;
        e.light = light_from_json(je.at("light"));
        e.support = je.at("support").get<int>();
        for (const auto& r : je.at("rejected"))
            e.rejected.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
        p.entries.push_back(std::move(e));
        p.scales.push_back(je.at("scale").get<std::int64_t>());
    }
    if (!j.at("aborted").is_null()) p.abort_reason = j.at("aborted").get<std::string>();
    if (!j.at("detection").is_null()) {
        PeriodDetection d;
        d.preperiod = j.at("detection").at("preperiod").get<std::int64_t>();
        d.period = j.at("detection").at("period").get<std::int64_t>();
        d.repetitions = j.at("detection").at("repetitions").get<std::int64_t>();
        p.detection = d;
    }
    return p;
}

std::string analysis_to_json(const std::string& source_desc, const ComplexityProfile& cp,
                             const RecurrenceProfile& rp, const PeriodicityVerdict& pv,
                             const URVerdict& uv, const BalanceReport& br) {
    json j;
    j["schema"] = "rauzy.analysis/1";
    j["source"] = source_desc;
    j["complexity"] = {{"values", cp.values}, {"diffs", cp.diffs}};
    json rvals = json::array();
    for (const auto& v : rp.values) rvals.push_back(v ? json(*v) : json(nullptr));
    j["recurrence"] = {{"values", rvals}, {"buffer", rp.buffer_length}};
    switch (pv.kind) {
        case PeriodicityVerdict::Kind::Periodic:
            j["periodicity"] = {{"verdict", "periodic"},
                                {"preperiod", pv.preperiod},
                                {"period", pv.period}};
            break;
        case PeriodicityVerdict::Kind::NotPeriodicUpTo:
            j["periodicity"] = {{"verdict", "not_periodic_up_to"}, {"horizon", pv.horizon}};
            break;
        default:
            j["periodicity"] = {{"verdict", "undecided"}, {"note", pv.note}};
    }
    switch (uv.kind) {
        case URVerdict::Kind::UR:
            j["uniform_recurrence"] = {{"verdict", "ur"}, {"reason", uv.reason}};
            break;
        case URVerdict::Kind::NotUR:
            j["uniform_recurrence"] = {{"verdict", "not_ur"},
                                       {"witness", uv.witness},
                                       {"reason", uv.reason}};
            break;
        default:
            j["uniform_recurrence"] = {{"verdict", "undecided"}, {"reason", uv.reason}};
    }
    if (br.balanced) {
        j["balance"] = {{"verdict", "balanced"}};
    } else {
        j["balance"] = {{"verdict", "unbalanced"},
                        {"length", br.length},
                        {"letter", std::string(1, br.letter)},
                        {"low", br.witness_low},
                        {"high", br.witness_high}};
    }
    return j.dump(2);
}

std::string profile_to_csv(const ComplexityProfile& cp) {
    std::ostringstream os;
    os << "N,P,diff\n";
    for (std::size_t i = 0; i < cp.values.size(); ++i) {
        os << (i + 1) << "," << cp.values[i] << ",";
        if (i + 1 < cp.values.size()) os << cp.diffs[i];
        os << "\n";
    }
    return os.str();
}

std::string recurrence_to_csv(const RecurrenceProfile& rp) {
    std::ostringstream os;
    os << "N,P2\n";
    for (std::size_t i = 0; i < rp.values.size(); ++i) {
        os << (i + 1) << ",";
        if (rp.values[i]) os << *rp.values[i];
        os << "\n";
    }
    return os.str();
}

std::string validation_to_json(const ValidationReport& rep) {
    json j;
    j["schema"] = "rauzy.validation/1";
    j["path_bound"] = rep.path_bound;
    j["factor_bound"] = rep.factor_bound;
    auto status = [](PropertyResult::Status s) {
        switch (s) {
            case PropertyResult::Status::Pass: return "pass";
            case PropertyResult::Status::Fail: return "fail";
            default: return "unverified";
        }
    };
    j["wellformed"] = {{"status", status(rep.wellformed.status)},
                       {"detail", rep.wellformed.detail}};
    j["properties"] = json::array();
    for (std::size_t i = 0; i < rep.properties.size(); ++i)
        j["properties"].push_back({{"property", i + 1},
                                   {"status", status(rep.properties[i].status)},
                                   {"detail", rep.properties[i].detail},
                                   {"checked", rep.properties[i].checked}});
    j["ok"] = rep.ok();
    return j.dump(2);
}

} // namespace rauzy
