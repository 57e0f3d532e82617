#include "boundarylab/config.hpp"

#include <fstream>

#include "boundarylab/image_io.hpp"
#include "boundarylab/parallel.hpp"

namespace boundarylab {

namespace {

using KV = std::map<std::string, std::string>;

const std::map<std::string, KV>& schemas() {
    static const std::map<std::string, KV> table = {
        {"raster",
         {{"bank", "paper_filter_bank"},
          {"mode", "l1"},
          {"width", "512"},
          {"height", "512"},
          {"extent", "0,0,1,1"},
          {"neighborhood", "8"},
          {"depths", "8,9,10"}}},
        {"bound",
         {{"kind", "curve"},
          {"class", "image_poly"},
          {"k", "10..200"},
          {"eps", "0.5"},
          {"preimage", "0"},
          {"m", "4..64"},
          {"channels", "3"}}},
        {"stability",
         {{"classifier", "threshold1d"},
          {"eps", "0.05"},
          {"samples", "100000"},
          {"directions", "64"},
          {"steps", "8"}}},
        {"usefulness",
         {{"data", "synthetic1d"},
          {"n", "100000"},
          {"delta", "0.1"},
          {"iters", "3"},
          {"features", "smooth0,sign0"}}},
        {"symmetry",
         {{"m", "2"},
          {"n", "3"},
          {"point_ops", "0"},
          {"samples", "1000"},
          {"classifier", "mean"}}},
        {"attack",
         {{"classifier", "threshold1d"},
          {"x_orig", "0.2"},
          {"x_seed", "0.9"},
          {"tol", "0.001"},
          {"budgets", "0,5,100"},
          {"nseeds", "16"},
          {"max_rounds", "1000000"}}},
    };
    return table;
}

const KV& top_level_schema() {
    static const KV table = {{"seed", "42"}, {"threads", "auto"}, {"out", "out"}};
    return table;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

const std::map<std::string, std::string>& subcommand_schema(const std::string& name) {
    auto it = schemas().find(name);
    if (it == schemas().end()) throw ConfigError("unknown subcommand: " + name);
    return it->second;
}

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, schema] : schemas()) out.push_back(name);
        return out;
    }();
    return names;
}

SectionMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    SectionMap out;
    std::string section;  // "" = top level
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        // Inline comments start at whitespace followed by '#' or ';'.
        for (std::size_t i = 1; i < t.size(); ++i) {
            if ((t[i] == '#' || t[i] == ';') && (t[i - 1] == ' ' || t[i - 1] == '\t')) {
                t = trim(t.substr(0, i));
                break;
            }
        }
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (schemas().find(section) == schemas().end())
                throw ConfigError("unknown config section: [" + section + "]");
            out[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");

        const KV& schema = section.empty() ? top_level_schema()
                                           : subcommand_schema(section);
        if (schema.find(key) == schema.end()) {
            std::string where = section.empty() ? "top level" : "[" + section + "]";
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
        out[section][key] = value;
    }
    return out;
}

RunConfig resolve_run(const std::string& subcommand, const SectionMap& file_config,
                      const std::vector<std::string>& kv_args,
                      const std::string& seed_flag, const std::string& threads_flag,
                      const std::string& out_flag, bool check_flag) {
    RunConfig run;
    run.subcommand = subcommand;
    run.check = check_flag;
    run.params = subcommand_schema(subcommand);  // defaults

    std::string seed_str = top_level_schema().at("seed");
    std::string threads_str = top_level_schema().at("threads");
    std::string out_str = top_level_schema().at("out");

    if (auto top = file_config.find(""); top != file_config.end()) {
        if (auto it = top->second.find("seed"); it != top->second.end())
            seed_str = it->second;
        if (auto it = top->second.find("threads"); it != top->second.end())
            threads_str = it->second;
        if (auto it = top->second.find("out"); it != top->second.end())
            out_str = it->second;
    }
    if (auto sec = file_config.find(subcommand); sec != file_config.end()) {
        for (const auto& [key, value] : sec->second) run.params[key] = value;
    }

    for (const std::string& arg : kv_args) {
        std::size_t eq = arg.find('=');
        if (eq == std::string::npos) {
            if (subcommand == "bound" && arg == "mitigation") {
                run.params["kind"] = "mitigation";
                continue;
            }
            throw ConfigError("expected key=value argument, got '" + arg + "'");
        }
        std::string key = arg.substr(0, eq);
        std::string value = arg.substr(eq + 1);
        if (run.params.find(key) == run.params.end())
            throw ConfigError("unknown key '" + key + "' for subcommand " + subcommand);
        run.params[key] = value;
    }

    if (!seed_flag.empty()) seed_str = seed_flag;
    if (!threads_flag.empty()) threads_str = threads_flag;
    if (!out_flag.empty()) out_str = out_flag;

    run.seed = parse_u64(seed_str, "seed");
    if (threads_str == "auto") {
        run.threads = resolve_threads(0);
    } else {
        std::int64_t t = parse_i64(threads_str, "threads");
        if (t < 1 || t > 4096) throw ConfigError("threads must be in [1, 4096] or auto");
        run.threads = static_cast<int>(t);
    }
    if (out_str.empty()) throw ConfigError("output directory must not be empty");
    run.output_dir = out_str;
    return run;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size() || value[0] == '-') throw ConfigError(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad unsigned integer for '" + key + "': '" + value + "'");
    }
}

std::int64_t parse_i64(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw ConfigError(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': '" + value + "'");
    }
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw ConfigError(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for '" + key + "': '" + value + "'");
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "0" || value == "false") return false;
    if (value == "1" || value == "true") return true;
    throw ConfigError("bad boolean for '" + key + "': '" + value + "'");
}

std::vector<std::int64_t> parse_int_list(const std::string& value,
                                         const std::string& key) {
    std::vector<std::int64_t> out;
    std::size_t dots = value.find("..");
    if (dots != std::string::npos) {
        std::int64_t lo = parse_i64(value.substr(0, dots), key);
        std::int64_t hi = parse_i64(value.substr(dots + 2), key);
        if (hi < lo) throw ConfigError("empty range for '" + key + "': '" + value + "'");
        if (hi - lo > 1000000) throw ConfigError("range too large for '" + key + "'");
        for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string item = comma == std::string::npos ? value.substr(start)
                                                      : value.substr(start, comma - start);
        out.push_back(parse_i64(item, key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

std::vector<double> parse_real_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string item = comma == std::string::npos ? value.substr(start)
                                                      : value.substr(start, comma - start);
        out.push_back(parse_real(item, key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

}  // namespace boundarylab
