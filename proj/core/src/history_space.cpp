#include "quantropy/history_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "quantropy/errors.hpp"

namespace quantropy {

HistorySpace::HistorySpace(std::vector<std::string> ids,
                           std::vector<double> weights,
                           std::vector<double> actions)
    : ids_(std::move(ids)),
      weights_(std::move(weights)),
      actions_(std::move(actions)) {
    if (ids_.empty()) {
        throw std::invalid_argument("history space needs at least one history");
    }
    if (weights_.size() != ids_.size() || actions_.size() != ids_.size()) {
        throw std::invalid_argument(
            "ids, weights and actions must have equal length");
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument(
                "measure weights must be strictly positive and finite");
        }
    }
    for (double a : actions_) {
        if (!std::isfinite(a)) {
            throw NonFiniteAction("history action is not finite");
        }
    }
}

double HistorySpace::min_action() const {
    return *std::min_element(actions_.begin(), actions_.end());
}

double HistorySpace::max_action() const {
    return *std::max_element(actions_.begin(), actions_.end());
}

HistorySpace HistorySpace::shifted(double c) const {
    std::vector<double> actions = actions_;
    for (double& a : actions) a += c;
    return HistorySpace(ids_, weights_, std::move(actions));
}

HistorySpace product_space(const HistorySpace& s1, const HistorySpace& s2,
                           std::size_t max_histories) {
    const std::size_t n1 = s1.size();
    const std::size_t n2 = s2.size();
    if (n2 != 0 && n1 > max_histories / n2) {
        std::ostringstream msg;
        msg << "product space would hold " << n1 << " x " << n2
            << " histories, cap is " << max_histories;
        throw SizeOverflow(msg.str());
    }
    std::vector<std::string> ids;
    std::vector<double> weights;
    std::vector<double> actions;
    ids.reserve(n1 * n2);
    weights.reserve(n1 * n2);
    actions.reserve(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            ids.push_back(s1.ids()[i] + "*" + s2.ids()[j]);
            weights.push_back(s1.weights()[i] * s2.weights()[j]);
            actions.push_back(s1.actions()[i] + s2.actions()[j]);
        }
    }
    return HistorySpace(std::move(ids), std::move(weights), std::move(actions));
}

namespace {

HistorySpace parse_space(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("histories") ||
        !doc["histories"].is_array() || doc["histories"].empty()) {
        throw std::invalid_argument(
            "expected {\"histories\":[{\"id\",\"weight\",\"action\"},...]}");
    }
    std::vector<std::string> ids;
    std::vector<double> weights;
    std::vector<double> actions;
    for (const auto& h : doc["histories"]) {
        ids.push_back(h.at("id").get<std::string>());
        weights.push_back(h.at("weight").get<double>());
        actions.push_back(h.at("action").get<double>());
    }
    return HistorySpace(std::move(ids), std::move(weights), std::move(actions));
}

}  // namespace

HistorySpace history_space_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad history space JSON: ") +
                                    e.what());
    }
    try {
        return parse_space(doc);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad history space JSON: ") +
                                    e.what());
    }
}

std::string history_space_to_json(const HistorySpace& space) {
    nlohmann::ordered_json doc;
    doc["histories"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        doc["histories"].push_back({{"id", space.ids()[i]},
                                    {"weight", space.weights()[i]},
                                    {"action", space.actions()[i]}});
    }
    return doc.dump(2) + "\n";
}

HistorySpace load_history_space(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return history_space_from_json(buf.str());
}

void save_history_space(const HistorySpace& space,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write " + path.string());
    }
    out << history_space_to_json(space);
}

}  // namespace quantropy
