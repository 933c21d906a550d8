#ifndef FAVAR_PANEL_HPP
#define FAVAR_PANEL_HPP

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "favar/errors.hpp"

namespace favar {

enum class SeriesGroup { aggregate, regional, state, shock, other };

enum class TransformKind {
  level,
  first_difference,
  log_level,
  log_difference,
  deflate_then_log_difference,
};

struct TransformSpec {
  TransformKind kind = TransformKind::level;
  std::optional<std::string> deflator_series_id;  // required iff deflating
};

const char* to_string(TransformKind k);
TransformKind transform_kind_from_string(const std::string& s);

struct SeriesMeta {
  SeriesGroup group = SeriesGroup::other;
  std::string unit_id;
  TransformSpec transform_applied;
};

// Rectangular time-indexed multi-series dataset; the universal input of the
// pipeline. Immutable after construction: every operation returns a new
// panel, so panels are safe to share across threads.
class SeriesPanel {
 public:
  SeriesPanel() = default;
  SeriesPanel(Eigen::MatrixXd observations, std::vector<int> time_index,
              std::vector<std::string> series_ids,
              std::vector<SeriesMeta> series_meta = {});

  Eigen::Index rows() const { return obs_.rows(); }  // T
  Eigen::Index cols() const { return obs_.cols(); }  // N

  const Eigen::MatrixXd& observations() const { return obs_; }
  const std::vector<int>& time_index() const { return time_; }
  const std::vector<std::string>& series_ids() const { return ids_; }
  const std::vector<SeriesMeta>& series_meta() const { return meta_; }

  bool has_series(const std::string& id) const;
  Eigen::Index column_index(const std::string& id) const;  // UnknownReference
  Eigen::VectorXd column(const std::string& id) const;
  const SeriesMeta& meta(const std::string& id) const;

  // New panel restricted to the given series, in the given order.
  SeriesPanel select(const std::vector<std::string>& ids) const;

  // Column-wise concatenation over the intersection of time windows.
  static SeriesPanel merge(const std::vector<SeriesPanel>& panels);

  SeriesPanel with_meta(std::vector<SeriesMeta> meta) const;

 private:
  Eigen::MatrixXd obs_;
  std::vector<int> time_;
  std::vector<std::string> ids_;
  std::vector<SeriesMeta> meta_;
  std::map<std::string, Eigen::Index> index_;
};

struct SummaryRow {
  std::string series_id;
  double mean = 0, std_dev = 0, max = 0, min = 0;
  double corr_with_reference = 0;
};

// Narrative shock measure: an annual real-valued series; years with no
// legislated change carry value 0.
struct ShockSeries {
  std::string shock_id;
  Eigen::VectorXd values;
  std::map<int, std::string> event_labels;  // period -> act name
};

enum class CsvSchema { wide, long_form };

// CSV ingestion. Wide: header "period,<id>,<id>,..."; long: header
// "period,series_id,value". Empty cells are missing values: leading/trailing
// incomplete rows are trimmed to the maximal complete window, interior gaps
// are rejected.
SeriesPanel load_panel(const std::string& path, CsvSchema schema);
void save_panel(const SeriesPanel& panel, const std::string& path,
                CsvSchema schema);

// Shock files use the long schema with an optional fourth column "label".
// Series are aligned to [first_period, last_period] with zeros where the
// file has no row.
std::vector<ShockSeries> load_shocks(const std::string& path, int first_period,
                                     int last_period);

// Per-series transformation. Differencing shortens the panel by one period;
// all series are truncated to the common window. The applied spec is
// recorded in the series metadata.
SeriesPanel transform(const SeriesPanel& panel,
                      const std::map<std::string, TransformSpec>& specs);

struct StandardizeResult {
  SeriesPanel panel;
  Eigen::VectorXd means;
  Eigen::VectorXd std_devs;  // population convention (divide by n)
};

StandardizeResult standardize(const SeriesPanel& panel);

// One row per series; std_dev uses the sample convention (n-1), corr is
// Pearson correlation against the reference series.
std::vector<SummaryRow> summary_stats(const SeriesPanel& panel,
                                      const std::string& reference_series_id);

}  // namespace favar

#endif
