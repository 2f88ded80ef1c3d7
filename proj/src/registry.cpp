#include "macsel/registry.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "macsel/errors.hpp"

namespace macsel {

using nlohmann::json;

const CategoryInfo* Registry::find_category(std::string_view id) const {
    for (const auto& c : categories)
        if (c.id == id) return &c;
    return nullptr;
}

const Requirement* Registry::find_requirement(std::string_view id) const {
    for (const auto& r : requirements)
        if (r.id == id) return &r;
    return nullptr;
}

const ProtocolRecord* Registry::find_protocol(std::string_view name) const {
    for (const auto& p : protocols)
        if (p.name == name) return &p;
    return nullptr;
}

Registry seed_registry() {
    Registry reg;
    reg.categories = {
        {"ScP", "TSMP", "scheduled protocols: contention-free slot/frequency cells"},
        {"CAP", "SMAC", "common active period protocols: shared sleep/wake schedule, CSMA/CA"},
        {"PSP", "PSA", "preamble sampling protocols: periodic channel checks, long preamble"},
    };
    reg.requirements = {
        {"overhearing-avoidance", "protocol prevents overhearing (security)"},
        {"distributed", "operates without central coordination (topology independent)"},
    };
    const std::set<std::string> both{"distributed", "overhearing-avoidance"};
    reg.protocols = {
        {"TSMP", "ScP", {"overhearing-avoidance"}, both},
        {"SMACS", "ScP", both, both},
        {"AS-MAC", "ScP", both, both},
        {"SMAC", "CAP", {"distributed"}, both},
        {"PSA", "PSP", {"distributed"}, both},
        {"STEM", "PSP", both, both},
    };
    return reg;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::invalid_document, msg); }

std::string at(const char* list, std::size_t i) {
    return std::string(list) + "[" + std::to_string(i) + "]";
}

}  // namespace

void check_registry(const Registry& reg) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < reg.categories.size(); ++i) {
        const auto& c = reg.categories[i];
        if (c.id.empty()) fail(at("categories", i) + ".id: must be non-empty");
        if (!seen.insert(c.id).second) fail(at("categories", i) + ".id: duplicate category '" + c.id + "'");
    }
    seen.clear();
    for (std::size_t i = 0; i < reg.requirements.size(); ++i) {
        const auto& r = reg.requirements[i];
        if (r.id.empty()) fail(at("requirements", i) + ".id: must be non-empty");
        if (!seen.insert(r.id).second) fail(at("requirements", i) + ".id: duplicate requirement '" + r.id + "'");
    }
    seen.clear();
    for (std::size_t i = 0; i < reg.protocols.size(); ++i) {
        const auto& p = reg.protocols[i];
        const auto where = at("protocols", i);
        if (p.name.empty()) fail(where + ".name: must be non-empty");
        if (!seen.insert(p.name).second) fail(where + ".name: duplicate protocol '" + p.name + "'");
        if (!reg.find_category(p.category)) fail(where + ".category: unknown category '" + p.category + "'");
        for (const auto& r : p.reviewed_against)
            if (!reg.find_requirement(r)) fail(where + ".reviewed_against: unknown requirement '" + r + "'");
        for (const auto& r : p.satisfies) {
            if (!reg.find_requirement(r)) fail(where + ".satisfies: unknown requirement '" + r + "'");
            if (!p.reviewed_against.count(r))
                fail(where + ".satisfies: '" + r + "' is not in reviewed_against");
        }
    }
}

Registry add_category(const Registry& reg, const CategoryInfo& info) {
    if (info.id.empty()) throw Error(ErrorCode::invalid_document, "category id must be non-empty");
    if (reg.find_category(info.id)) throw Error(ErrorCode::duplicate, "duplicate category '" + info.id + "'");
    Registry out = reg;
    out.categories.push_back(info);
    return out;
}

Registry add_protocol(const Registry& reg, const ProtocolRecord& rec) {
    if (reg.find_protocol(rec.name)) throw Error(ErrorCode::duplicate, "duplicate protocol '" + rec.name + "'");
    if (!reg.find_category(rec.category))
        throw Error(ErrorCode::unknown_category, "unknown category '" + rec.category + "'");
    Registry out = reg;
    out.protocols.push_back(rec);
    // references inside rec (requirement ids, satisfies subset) are checked here
    check_registry(out);
    return out;
}

std::size_t combination_count(const ProtocolRecord& rec) {
    return std::size_t{1} << std::min<std::size_t>(rec.satisfies.size(), 63);
}

namespace {

using Combination = std::pair<std::string, std::vector<std::string>>;

std::set<Combination> combinations_of(const ProtocolRecord& rec) {
    std::vector<std::string> items(rec.satisfies.begin(), rec.satisfies.end());
    if (items.size() > 20)
        throw Error(ErrorCode::domain, "protocol '" + rec.name + "' satisfies too many requirements to enumerate");
    std::set<Combination> out;
    const std::uint32_t n = 1u << items.size();
    for (std::uint32_t mask = 0; mask < n; ++mask) {
        std::vector<std::string> subset;
        for (std::size_t b = 0; b < items.size(); ++b)
            if (mask & (1u << b)) subset.push_back(items[b]);
        out.emplace(rec.category, std::move(subset));
    }
    return out;
}

}  // namespace

std::vector<std::string> review_worklist(const Registry& reg) {
    std::vector<std::set<Combination>> covers;
    covers.reserve(reg.protocols.size());
    for (const auto& p : reg.protocols) covers.push_back(combinations_of(p));

    std::vector<bool> taken(reg.protocols.size(), false);
    std::set<Combination> covered;
    std::vector<std::string> order;
    while (true) {
        std::size_t best = reg.protocols.size();
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < reg.protocols.size(); ++i) {
            if (taken[i]) continue;
            std::size_t gain = 0;
            for (const auto& c : covers[i]) gain += covered.count(c) ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best == reg.protocols.size()) break;
        taken[best] = true;
        covered.insert(covers[best].begin(), covers[best].end());
        order.push_back(reg.protocols[best].name);
    }
    for (std::size_t i = 0; i < reg.protocols.size(); ++i)
        if (!taken[i]) order.push_back(reg.protocols[i].name);
    return order;
}

RequirementAddition add_requirement(const Registry& reg, const Requirement& req) {
    if (req.id.empty()) throw Error(ErrorCode::invalid_document, "requirement id must be non-empty");
    if (reg.find_requirement(req.id))
        throw Error(ErrorCode::duplicate, "duplicate requirement '" + req.id + "'");
    RequirementAddition out{reg, review_worklist(reg)};
    out.registry.requirements.push_back(req);
    return out;
}

// ---- JSON ---------------------------------------------------------------

json save_registry(const Registry& reg) {
    json doc;
    doc["categories"] = json::array();
    for (const auto& c : reg.categories)
        doc["categories"].push_back({{"id", c.id}, {"representative", c.representative}, {"note", c.note}});
    doc["requirements"] = json::array();
    for (const auto& r : reg.requirements)
        doc["requirements"].push_back({{"id", r.id}, {"description", r.description}});
    doc["protocols"] = json::array();
    for (const auto& p : reg.protocols)
        doc["protocols"].push_back({{"name", p.name},
                                    {"category", p.category},
                                    {"satisfies", p.satisfies},
                                    {"reviewed_against", p.reviewed_against}});
    return doc;
}

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) fail(where + ": expected an object");
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (const char* key : keys) known = known || k == key;
        if (!known) fail(where + "." + k + ": unknown field");
    }
}

std::string get_string(const json& obj, const std::string& where, const char* key, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) fail(where + "." + key + ": missing field");
        return {};
    }
    if (!it->is_string()) fail(where + "." + key + ": expected a string");
    return it->get<std::string>();
}

std::set<std::string> get_string_set(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    std::set<std::string> out;
    if (it == obj.end()) return out;
    if (!it->is_array()) fail(where + "." + key + ": expected an array of strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
        const auto& e = (*it)[i];
        if (!e.is_string()) fail(where + "." + key + "[" + std::to_string(i) + "]: expected a string");
        if (!out.insert(e.get<std::string>()).second)
            fail(where + "." + key + "[" + std::to_string(i) + "]: duplicate entry");
    }
    return out;
}

const json& get_array(const json& doc, const char* key) {
    static const json empty = json::array();
    auto it = doc.find(key);
    if (it == doc.end()) return empty;
    if (!it->is_array()) fail(std::string(key) + ": expected an array");
    return *it;
}

}  // namespace

Registry load_registry(const json& doc) {
    only_keys(doc, "registry", {"categories", "requirements", "protocols"});
    Registry reg;
    const auto& cats = get_array(doc, "categories");
    for (std::size_t i = 0; i < cats.size(); ++i) {
        const auto where = at("categories", i);
        only_keys(cats[i], where, {"id", "representative", "note"});
        reg.categories.push_back({get_string(cats[i], where, "id"),
                                  get_string(cats[i], where, "representative", false),
                                  get_string(cats[i], where, "note", false)});
    }
    const auto& reqs = get_array(doc, "requirements");
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        const auto where = at("requirements", i);
        only_keys(reqs[i], where, {"id", "description"});
        reg.requirements.push_back(
            {get_string(reqs[i], where, "id"), get_string(reqs[i], where, "description", false)});
    }
    const auto& protos = get_array(doc, "protocols");
    for (std::size_t i = 0; i < protos.size(); ++i) {
        const auto where = at("protocols", i);
        only_keys(protos[i], where, {"name", "category", "satisfies", "reviewed_against"});
        ProtocolRecord p;
        p.name = get_string(protos[i], where, "name");
        p.category = get_string(protos[i], where, "category");
        p.satisfies = get_string_set(protos[i], where, "satisfies");
        p.reviewed_against = get_string_set(protos[i], where, "reviewed_against");
        reg.protocols.push_back(std::move(p));
    }
    check_registry(reg);
    return reg;
}

Registry load_registry_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::invalid_document, "cannot open registry file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::invalid_document, "registry file '" + path.string() + "': " + e.what());
    }
    return load_registry(doc);
}

void save_registry_file(const std::filesystem::path& path, const Registry& reg) {
    check_registry(reg);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorCode::invalid_document, "cannot write '" + tmp.string() + "'");
        out << save_registry(reg).dump(2) << '\n';
        out.flush();
        if (!out) throw Error(ErrorCode::invalid_document, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorCode::invalid_document, "cannot replace '" + path.string() + "': " + ec.message());
    }
}

}  // namespace macsel
