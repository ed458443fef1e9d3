#include "evalkit/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace evalkit::corpus {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Multiple-choice references given as option text are normalized to the
// option's letter at ingestion.
void normalize_mc_reference(EvalInstance& inst, const std::string& where) {
    const auto& choices = *inst.choices;
    const std::string& ref = inst.reference;
    if (ref.size() == 1 && ref[0] >= 'A' && ref[0] < char('A' + choices.size()))
        return;
    for (size_t i = 0; i < choices.size(); ++i) {
        if (choices[i] == ref) {
            inst.reference = std::string(1, char('A' + i));
            return;
        }
    }
    throw ValidationError(where + ": multiple_choice reference '" + ref +
                          "' is neither a choice letter in range nor an option text");
}

}  // namespace

std::vector<EvalInstance> parse_instances(const std::string& text,
                                          const std::string& origin) {
    std::vector<EvalInstance> out;
    std::unordered_set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string where = origin + ":" + std::to_string(lineno);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(where + ": malformed record: " + e.what());
        }
        EvalInstance inst;
        try {
            inst = EvalInstance::from_json(j);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        if (!seen.insert(inst.id).second)
            throw ValidationError(where + ": duplicate id '" + inst.id + "'");
        if (inst.category == TaskCategory::kMultipleChoice)
            normalize_mc_reference(inst, where);
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<EvalInstance> load_instances(const std::filesystem::path& path) {
    return parse_instances(read_file(path), path.string());
}

void persist_instances(const std::vector<EvalInstance>& instances,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (const auto& inst : instances) out << inst.to_json().dump() << '\n';
}

void persist_verdicts(const std::vector<Verdict>& verdicts,
                      const RunManifest& manifest,
                      const std::filesystem::path& path,
                      const std::vector<std::string>& known_ids) {
    std::unordered_set<std::string> ids(known_ids.begin(), known_ids.end());
    for (const auto& v : verdicts) {
        v.validate();
        if (!ids.count(v.instance_id))
            throw ValidationError("verdict references unknown id '" + v.instance_id + "'");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (const auto& v : verdicts) out << v.to_json().dump() << '\n';
    out.close();

    std::filesystem::path mpath = path;
    mpath += ".manifest";
    std::ofstream mout(mpath, std::ios::binary);
    if (!mout) throw ValidationError("cannot write file: " + mpath.string());
    mout << manifest.to_json().dump() << '\n';
}

std::vector<Verdict> load_verdicts(const std::filesystem::path& path) {
    std::vector<Verdict> out;
    std::istringstream in(read_file(path));
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(Verdict::from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                                  ": " + e.what());
        }
    }
    return out;
}

RunManifest load_manifest(const std::filesystem::path& path) {
    return RunManifest::from_json(json::parse(read_file(path)));
}

std::string content_digest_of(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string content_digest(const std::filesystem::path& path) {
    return content_digest_of(read_file(path));
}

}  // namespace evalkit::corpus
