#include "multiwalk/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace multiwalk {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_bool(const std::string& v, std::size_t lineno) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw DataError("config line " + std::to_string(lineno) + ": expected a boolean, got \"" + v + "\"");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (edge_list.empty()) throw DataError("config: edge_list is required");
    if (labels_path.empty()) throw DataError("config: labels is required");
    if (output_dir.empty()) throw DataError("config: output_dir is required");
    if (pool_size < 1) throw DataError("config: pool_size must be >= 1");
    if (walk_length < 1 || struct_walk_length < 1)
        throw DataError("config: walk lengths must be >= 1");
    if (!(stay_prob > 0.0 && stay_prob < 1.0))
        throw DataError("config: stay_prob must be in (0, 1)");
    if (walks_per_node < 1) throw DataError("config: walks_per_node must be >= 1");
    if (methods.empty()) throw DataError("config: methods roster is empty");
    if (!(train_ratio > 0.0 && train_ratio < 1.0))
        throw DataError("config: train_ratio must be in (0, 1)");
    if (rounds < 1) throw DataError("config: rounds must be >= 1");
    sg.validate();
}

ExperimentConfig load_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "edge_list") cfg.edge_list = val;
            else if (key == "labels") cfg.labels_path = val;
            else if (key == "output_dir") cfg.output_dir = val;
            else if (key == "pool_size") cfg.pool_size = std::stoi(val);
            else if (key == "walk_length") cfg.walk_length = std::stoi(val);
            else if (key == "struct_walk_length") cfg.struct_walk_length = std::stoi(val);
            else if (key == "k_max") cfg.k_max = val == "auto" ? -1 : std::stoi(val);
            else if (key == "stay_prob") cfg.stay_prob = std::stod(val);
            else if (key == "walks_per_node") cfg.walks_per_node = std::stoi(val);
            else if (key == "dim") cfg.sg.dimension = std::stoi(val);
            else if (key == "window") cfg.sg.window = std::stoi(val);
            else if (key == "epochs") cfg.sg.epochs = std::stoi(val);
            else if (key == "negatives") cfg.sg.negatives = std::stoi(val);
            else if (key == "initial_lr") cfg.sg.initial_lr = std::stod(val);
            else if (key == "final_lr") cfg.sg.final_lr = std::stod(val);
            else if (key == "methods") {
                cfg.methods.clear();
                std::istringstream ms(val);
                std::string tok;
                while (std::getline(ms, tok, ',')) {
                    tok = trim(tok);
                    if (!tok.empty()) cfg.methods.push_back(tok);
                }
            } else if (key == "train_ratio") cfg.train_ratio = std::stod(val);
            else if (key == "rounds") cfg.rounds = std::stoi(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "regenerate_per_round")
                cfg.regenerate_per_round = parse_bool(val, lineno);
            else if (key == "ml_cache") cfg.use_ml_cache = parse_bool(val, lineno);
            else
                throw DataError("config line " + std::to_string(lineno) +
                                ": unknown key \"" + key + "\"");
        } catch (const std::invalid_argument&) {
            throw DataError("config line " + std::to_string(lineno) +
                            ": bad value for \"" + key + "\": \"" + val + "\"");
        } catch (const std::out_of_range&) {
            throw DataError("config line " + std::to_string(lineno) +
                            ": value out of range for \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    return load_experiment_config(in);
}

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "edge_list = " << cfg.edge_list << '\n'
        << "labels = " << cfg.labels_path << '\n'
        << "output_dir = " << cfg.output_dir << '\n'
        << "pool_size = " << cfg.pool_size << '\n'
        << "walk_length = " << cfg.walk_length << '\n'
        << "struct_walk_length = " << cfg.struct_walk_length << '\n'
        << "k_max = " << (cfg.k_max < 0 ? std::string("auto") : std::to_string(cfg.k_max))
        << '\n'
        << "stay_prob = " << cfg.stay_prob << '\n'
        << "walks_per_node = " << cfg.walks_per_node << '\n'
        << "dim = " << cfg.sg.dimension << '\n'
        << "window = " << cfg.sg.window << '\n'
        << "epochs = " << cfg.sg.epochs << '\n'
        << "negatives = " << cfg.sg.negatives << '\n'
        << "initial_lr = " << cfg.sg.initial_lr << '\n'
        << "final_lr = " << cfg.sg.final_lr << '\n';
    out << "methods = ";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
        if (i) out << ',';
        out << cfg.methods[i];
    }
    out << '\n'
        << "train_ratio = " << cfg.train_ratio << '\n'
        << "rounds = " << cfg.rounds << '\n'
        << "seed = " << cfg.seed << '\n'
        << "regenerate_per_round = " << (cfg.regenerate_per_round ? "true" : "false")
        << '\n'
        << "ml_cache = " << (cfg.use_ml_cache ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace multiwalk
