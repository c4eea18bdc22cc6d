#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace quantropy {

/// Default cap on |X| for product spaces; the CLI can override it through
/// the QUANTROPY_MAX_HISTORIES environment variable.
inline constexpr std::size_t kDefaultMaxHistories = 1'000'000;

/// A finite set of histories x with a positive measure weight w_x (the
/// discrete stand-in for dx) and a real action A(x) per history. The same
/// type carries thermal state spaces, where the action field is read as an
/// energy.
class HistorySpace {
public:
    HistorySpace(std::vector<std::string> ids, std::vector<double> weights,
                 std::vector<double> actions);

    std::size_t size() const { return ids_.size(); }
    std::span<const std::string> ids() const { return ids_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> actions() const { return actions_; }

    double min_action() const;
    double max_action() const;

    /// Same ids and weights, all actions shifted by c.
    HistorySpace shifted(double c) const;

private:
    std::vector<std::string> ids_;
    std::vector<double> weights_;
    std::vector<double> actions_;
};

/// Cartesian product: weights multiply, actions add. Throws SizeOverflow
/// when |s1|*|s2| exceeds max_histories.
HistorySpace product_space(const HistorySpace& s1, const HistorySpace& s2,
                           std::size_t max_histories = kDefaultMaxHistories);

/// JSON schema: {"histories":[{"id":str,"weight":float,"action":float},...]}
HistorySpace history_space_from_json(const std::string& text);
std::string history_space_to_json(const HistorySpace& space);
HistorySpace load_history_space(const std::filesystem::path& path);
void save_history_space(const HistorySpace& space,
                        const std::filesystem::path& path);

}  // namespace quantropy
