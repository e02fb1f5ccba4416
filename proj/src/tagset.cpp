#include "hodyne/tagset.hpp"

#include <fstream>

namespace hodyne {

const char* const kReservedSymbolNames[5] = {"START", "OPEN", "CLOSE", "HOPEN", "HCLOSE"};

const std::string& Tagset::symbol_name(SymbolId s) const {
    if (is_tag(s)) return tags[s].name;
    static const std::string reserved[5] = {"START", "OPEN", "CLOSE", "HOPEN", "HCLOSE"};
    return reserved[s - tags.size()];
}

std::optional<SymbolId> Tagset::find_tag(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<SymbolId> Tagset::find_symbol(std::string_view name) const {
    if (auto t = find_tag(name)) return t;
    for (int i = 0; i < 5; ++i)
        if (name == kReservedSymbolNames[i]) return static_cast<SymbolId>(tags.size() + i);
    return std::nullopt;
}

void Tagset::rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < tags.size(); ++i)
        index_.emplace(tags[i].name, static_cast<SymbolId>(i));
}

std::string_view category_name(TagCategory c) {
    switch (c) {
        case TagCategory::noun: return "noun";
        case TagCategory::verb: return "verb";
        case TagCategory::relpron: return "relpron";
        default: return "other";
    }
}

TagCategory parse_category(std::string_view text, const std::string& source, int line) {
    if (text == "noun") return TagCategory::noun;
    if (text == "verb") return TagCategory::verb;
    if (text == "relpron") return TagCategory::relpron;
    if (text == "other") return TagCategory::other;
    throw parse_error(source, line, "unknown category '" + std::string(text) + "'");
}

std::uint64_t Tagset::identity_hash() const {
    // FNV-1a over the canonical serialization.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    mix(mode == 1 ? "mode1" : "mode2");
    for (const Tag& t : tags) {
        mix(t.name);
        mix(category_name(t.category));
        mix(t.number == TagNumber::singular ? "sg"
            : t.number == TagNumber::plural ? "pl"
                                            : "u");
    }
    return h;
}

std::string Tagset::to_text() const {
    std::string out = "mode " + std::to_string(mode) + "\n";
    for (const Tag& t : tags) {
        out += "tag " + t.name + " " + std::string(category_name(t.category));
        if (t.number == TagNumber::singular) out += " sg";
        if (t.number == TagNumber::plural) out += " pl";
        out += "\n";
    }
    return out;
}

std::size_t symbol_count(const Tagset& tagset, Stage stage) {
    return tagset.tags.size() + (stage == Stage::subject ? 3 : 5);
}

namespace {

bool valid_tag_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '/' || c == '|') return false;
    return true;
}

bool is_reserved_name(std::string_view name) {
    for (const char* r : kReservedSymbolNames)
        if (name == r) return true;
    return false;
}

}  // namespace

Tagset load_tagset(std::istream& in, const std::string& source_name) {
    Tagset ts;
    bool mode_seen = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] == "mode") {
            if (fields.size() != 2 || (fields[1] != "1" && fields[1] != "2"))
                throw parse_error(source_name, lineno, "expected 'mode 1' or 'mode 2'");
            ts.mode = fields[1] == "1" ? 1 : 2;
            mode_seen = true;
        } else if (fields[0] == "tag") {
            if (!mode_seen)
                throw parse_error(source_name, lineno, "tag line before mode declaration");
            if (fields.size() != 3 && fields.size() != 4)
                throw parse_error(source_name, lineno,
                                  "expected 'tag <NAME> <category> [sg|pl]'");
            Tag t;
            t.name = fields[1];
            if (!valid_tag_name(t.name))
                throw parse_error(source_name, lineno, "bad tag name '" + t.name + "'");
            if (is_reserved_name(t.name))
                throw parse_error(source_name, lineno,
                                  "tag name '" + t.name + "' collides with a reserved symbol");
            for (const Tag& seen : ts.tags)
                if (seen.name == t.name)
                    throw parse_error(source_name, lineno, "duplicate tag name '" + t.name + "'");
            t.category = parse_category(fields[2], source_name, lineno);
            if (fields.size() == 4) {
                if (fields[3] == "sg")
                    t.number = TagNumber::singular;
                else if (fields[3] == "pl")
                    t.number = TagNumber::plural;
                else
                    throw parse_error(source_name, lineno, "number must be 'sg' or 'pl'");
                if (ts.mode == 1)
                    throw parse_error(source_name, lineno,
                                      "mode-1 tags carry no number information");
            }
            ts.tags.push_back(std::move(t));
        } else {
            throw parse_error(source_name, lineno, "unknown directive '" + fields[0] + "'");
        }
    }
    if (!mode_seen) throw parse_error(source_name, lineno ? lineno : 1, "missing mode declaration");
    if (ts.tags.empty()) throw parse_error(source_name, lineno, "tagset declares no tags");
    bool has_noun = false, has_verb = false;
    for (const Tag& t : ts.tags) {
        has_noun |= t.category == TagCategory::noun;
        has_verb |= t.category == TagCategory::verb;
    }
    if (!has_noun || !has_verb)
        throw parse_error(source_name, lineno, "tagset needs at least one noun and one verb tag");
    ts.rebuild_index();
    return ts;
}

Tagset load_tagset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tagset file: " + path);
    return load_tagset(in, path);
}

FineTagMapping load_fine_mapping(std::istream& in, const std::string& source_name,
                                 const Tagset& mode1, const Tagset& mode2) {
    FineTagMapping m;
    int active_mode = 1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] == "mode") {
            if (fields.size() != 2 || (fields[1] != "1" && fields[1] != "2"))
                throw parse_error(source_name, lineno, "expected 'mode 1' or 'mode 2'");
            active_mode = fields[1] == "1" ? 1 : 2;
            continue;
        }
        if (fields[0] != "map" || fields.size() != 4 || fields[2] != "->")
            throw parse_error(source_name, lineno, "expected 'map <FINE> -> <NAME>[,<NAME>...]'");
        const Tagset& ts = active_mode == 1 ? mode1 : mode2;
        auto targets = split_commas(fields[3]);
        if (targets.empty()) throw parse_error(source_name, lineno, "empty target set");
        for (const std::string& t : targets)
            if (!ts.find_tag(t))
                throw parse_error(source_name, lineno,
                                  "unknown mode-" + std::to_string(active_mode) + " tag '" + t + "'");
        auto& table = active_mode == 1 ? m.mode1 : m.mode2;
        if (table.count(fields[1]))
            throw parse_error(source_name, lineno, "duplicate fine tag '" + fields[1] + "'");
        table.emplace(fields[1], std::move(targets));
    }
    return m;
}

FineTagMapping load_fine_mapping_file(const std::string& path, const Tagset& mode1,
                                      const Tagset& mode2) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mapping file: " + path);
    return load_fine_mapping(in, path, mode1, mode2);
}

const std::vector<std::string>& map_fine_tag(const std::string& fine,
                                             const FineTagMapping& mapping, int mode) {
    const auto& table = mode == 1 ? mapping.mode1 : mapping.mode2;
    auto it = table.find(fine);
    if (it == table.end())
        throw std::runtime_error("no mapping for fine tag '" + fine + "' in mode " +
                                 std::to_string(mode));
    return it->second;
}

}  // namespace hodyne
