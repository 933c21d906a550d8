#include "favar/panel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "csv.hpp"

namespace favar {

const char* to_string(TransformKind k) {
  switch (k) {
    case TransformKind::level: return "level";
    case TransformKind::first_difference: return "first_difference";
    case TransformKind::log_level: return "log_level";
    case TransformKind::log_difference: return "log_difference";
    case TransformKind::deflate_then_log_difference:
      return "deflate_then_log_difference";
  }
  return "level";
}

TransformKind transform_kind_from_string(const std::string& s) {
  if (s == "level") return TransformKind::level;
  if (s == "first_difference") return TransformKind::first_difference;
  if (s == "log_level") return TransformKind::log_level;
  if (s == "log_difference") return TransformKind::log_difference;
  if (s == "deflate_then_log_difference")
    return TransformKind::deflate_then_log_difference;
  throw InvalidArgument("unknown transform kind '" + s + "'");
}

SeriesPanel::SeriesPanel(Eigen::MatrixXd observations,
                         std::vector<int> time_index,
                         std::vector<std::string> series_ids,
                         std::vector<SeriesMeta> series_meta)
    : obs_(std::move(observations)),
      time_(std::move(time_index)),
      ids_(std::move(series_ids)),
      meta_(std::move(series_meta)) {
  if (obs_.rows() != static_cast<Eigen::Index>(time_.size()))
    throw InvalidArgument("time index length does not match observation rows");
  if (obs_.cols() != static_cast<Eigen::Index>(ids_.size()))
    throw InvalidArgument("series id count does not match observation columns");
  if (meta_.empty()) meta_.resize(ids_.size());
  if (meta_.size() != ids_.size())
    throw InvalidArgument("series metadata count does not match series ids");
  for (std::size_t i = 1; i < time_.size(); ++i)
    if (time_[i] <= time_[i - 1])
      throw InvalidArgument("time index must be strictly increasing");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], static_cast<Eigen::Index>(i)).second)
      throw InvalidArgument("duplicate series id '" + ids_[i] + "'");
  }
  if (!obs_.allFinite())
    throw InvalidArgument("panel contains non-finite values");
}

bool SeriesPanel::has_series(const std::string& id) const {
  return index_.count(id) > 0;
}

Eigen::Index SeriesPanel::column_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw UnknownReference("series '" + id + "' not in panel");
  return it->second;
}

Eigen::VectorXd SeriesPanel::column(const std::string& id) const {
  return obs_.col(column_index(id));
}

const SeriesMeta& SeriesPanel::meta(const std::string& id) const {
  return meta_[static_cast<std::size_t>(column_index(id))];
}

SeriesPanel SeriesPanel::select(const std::vector<std::string>& ids) const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(ids.size()));
  std::vector<SeriesMeta> meta;
  meta.reserve(ids.size());
  for (std::size_t j = 0; j < ids.size(); ++j) {
    const Eigen::Index c = column_index(ids[j]);
    out.col(static_cast<Eigen::Index>(j)) = obs_.col(c);
    meta.push_back(meta_[static_cast<std::size_t>(c)]);
  }
  return SeriesPanel(std::move(out), time_, ids, std::move(meta));
}

SeriesPanel SeriesPanel::merge(const std::vector<SeriesPanel>& panels) {
  if (panels.empty()) throw InvalidArgument("merge of zero panels");
  // Common window: intersection of period sets, kept only where contiguous
  // in every input.
  std::set<int> common(panels[0].time_.begin(), panels[0].time_.end());
  for (std::size_t k = 1; k < panels.size(); ++k) {
    std::set<int> next;
    for (int t : panels[k].time_)
      if (common.count(t)) next.insert(t);
    common.swap(next);
  }
  if (common.empty()) throw InvalidArgument("merged panels share no periods");
  std::vector<int> window(common.begin(), common.end());

  Eigen::Index n_total = 0;
  for (const auto& p : panels) n_total += p.cols();
  Eigen::MatrixXd obs(static_cast<Eigen::Index>(window.size()), n_total);
  std::vector<std::string> ids;
  std::vector<SeriesMeta> meta;
  Eigen::Index col = 0;
  for (const auto& p : panels) {
    std::vector<Eigen::Index> row_of(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
      auto it = std::lower_bound(p.time_.begin(), p.time_.end(), window[i]);
      row_of[i] = static_cast<Eigen::Index>(it - p.time_.begin());
    }
    for (Eigen::Index j = 0; j < p.cols(); ++j, ++col) {
      for (std::size_t i = 0; i < window.size(); ++i)
        obs(static_cast<Eigen::Index>(i), col) = p.obs_(row_of[i], j);
      ids.push_back(p.ids_[static_cast<std::size_t>(j)]);
      meta.push_back(p.meta_[static_cast<std::size_t>(j)]);
    }
  }
  return SeriesPanel(std::move(obs), std::move(window), std::move(ids),
                     std::move(meta));
}

SeriesPanel SeriesPanel::with_meta(std::vector<SeriesMeta> meta) const {
  return SeriesPanel(obs_, time_, ids_, std::move(meta));
}

namespace {

struct Cell {
  int period;
  std::optional<double> value;
};

// Assembles a panel from per-series period->value maps: sorts periods, trims
// incomplete leading/trailing rows, and rejects interior gaps.
SeriesPanel assemble(const std::vector<std::string>& ids,
                     const std::map<std::string, std::map<int, double>>& cells,
                     const std::string& path) {
  std::set<int> period_set;
  for (const auto& [id, m] : cells)
    for (const auto& [t, v] : m) period_set.insert(t);
  if (period_set.empty())
    throw MalformedFile("'" + path + "' has no data rows");
  std::vector<int> periods(period_set.begin(), period_set.end());

  const auto complete = [&](int t) {
    for (const auto& id : ids) {
      auto it = cells.find(id);
      if (it == cells.end() || !it->second.count(t)) return false;
    }
    return true;
  };
  std::size_t lo = 0, hi = periods.size();
  while (lo < hi && !complete(periods[lo])) ++lo;
  while (hi > lo && !complete(periods[hi - 1])) --hi;
  if (lo >= hi)
    throw MalformedFile("'" + path + "' has no complete cross-section row");

  Eigen::MatrixXd obs(static_cast<Eigen::Index>(hi - lo),
                      static_cast<Eigen::Index>(ids.size()));
  std::vector<int> window;
  for (std::size_t i = lo; i < hi; ++i) {
    const int t = periods[i];
    for (std::size_t j = 0; j < ids.size(); ++j) {
      auto it = cells.find(ids[j]);
      if (it == cells.end())
        throw MalformedFile("'" + path + "': series '" + ids[j] +
                            "' has no data");
      auto cell = it->second.find(t);
      if (cell == it->second.end())
        throw MalformedFile("'" + path + "': series '" + ids[j] +
                            "' is missing period " + std::to_string(t) +
                            " inside the common window");
      obs(static_cast<Eigen::Index>(i - lo), static_cast<Eigen::Index>(j)) =
          cell->second;
    }
    window.push_back(t);
  }
  return SeriesPanel(std::move(obs), std::move(window), ids);
}

}  // namespace

SeriesPanel load_panel(const std::string& path, CsvSchema schema) {
  const auto rows = csv::read_rows(path);
  if (rows.empty()) throw MalformedFile("'" + path + "' is empty");
  const auto& header = rows[0];

  std::map<std::string, std::map<int, double>> cells;
  std::vector<std::string> ids;

  if (schema == CsvSchema::wide) {
    if (header.empty() || header[0] != "period")
      throw MalformedFile("'" + path +
                          "': wide header must start with 'period'");
    if (header.size() < 2)
      throw MalformedFile("'" + path + "': wide header has no series");
    ids.assign(header.begin() + 1, header.end());
    {
      std::set<std::string> uniq(ids.begin(), ids.end());
      if (uniq.size() != ids.size())
        throw MalformedFile("'" + path + "': duplicate series id in header");
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.size() != header.size())
        throw MalformedFile("'" + path + "': row " + std::to_string(r + 1) +
                            " has " + std::to_string(row.size()) +
                            " fields, expected " +
                            std::to_string(header.size()));
      bool ok = false;
      const long period = csv::parse_long(row[0], &ok);
      if (!ok)
        throw NonNumericValue("'" + path + "': bad period '" + row[0] + "'");
      for (std::size_t j = 1; j < row.size(); ++j) {
        const auto v = csv::parse_double(row[j], &ok);
        if (!ok)
          throw NonNumericValue("'" + path + "': bad value '" + row[j] +
                                "' for series '" + ids[j - 1] + "'");
        if (!v) continue;  // missing cell, handled by trimming
        auto& series = cells[ids[j - 1]];
        if (!series.emplace(static_cast<int>(period), *v).second)
          throw DuplicateCell("'" + path + "': period " +
                              std::to_string(period) + ", series '" +
                              ids[j - 1] + "'");
      }
    }
  } else {
    if (header.size() != 3 || header[0] != "period" ||
        header[1] != "series_id" || header[2] != "value")
      throw MalformedFile("'" + path +
                          "': long header must be 'period,series_id,value'");
    std::set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.size() != 3)
        throw MalformedFile("'" + path + "': row " + std::to_string(r + 1) +
                            " has " + std::to_string(row.size()) +
                            " fields, expected 3");
      bool ok = false;
      const long period = csv::parse_long(row[0], &ok);
      if (!ok)
        throw NonNumericValue("'" + path + "': bad period '" + row[0] + "'");
      const auto v = csv::parse_double(row[2], &ok);
      if (!ok)
        throw NonNumericValue("'" + path + "': bad value '" + row[2] + "'");
      if (!v) continue;
      if (seen.insert(row[1]).second) ids.push_back(row[1]);
      auto& series = cells[row[1]];
      if (!series.emplace(static_cast<int>(period), *v).second)
        throw DuplicateCell("'" + path + "': period " + std::to_string(period) +
                            ", series '" + row[1] + "'");
    }
    // Column order must not depend on row order in the file.
    std::sort(ids.begin(), ids.end());
  }

  if (ids.empty()) throw MalformedFile("'" + path + "' declares no series");
  return assemble(ids, cells, path);
}

void save_panel(const SeriesPanel& panel, const std::string& path,
                CsvSchema schema) {
  std::string out;
  if (schema == CsvSchema::wide) {
    std::vector<std::string> header{"period"};
    for (const auto& id : panel.series_ids()) header.push_back(id);
    out += csv::join(header);
    out += '\n';
    for (Eigen::Index t = 0; t < panel.rows(); ++t) {
      std::vector<std::string> row{
          std::to_string(panel.time_index()[static_cast<std::size_t>(t)])};
      for (Eigen::Index j = 0; j < panel.cols(); ++j)
        row.push_back(csv::format_double(panel.observations()(t, j)));
      out += csv::join(row);
      out += '\n';
    }
  } else {
    out += "period,series_id,value\n";
    for (Eigen::Index t = 0; t < panel.rows(); ++t)
      for (Eigen::Index j = 0; j < panel.cols(); ++j) {
        out += std::to_string(panel.time_index()[static_cast<std::size_t>(t)]);
        out += ',';
        out += panel.series_ids()[static_cast<std::size_t>(j)];
        out += ',';
        out += csv::format_double(panel.observations()(t, j));
        out += '\n';
      }
  }
  csv::write_file(path, out);
}

std::vector<ShockSeries> load_shocks(const std::string& path, int first_period,
                                     int last_period) {
  if (last_period < first_period)
    throw InvalidArgument("shock window is empty");
  const auto rows = csv::read_rows(path);
  if (rows.empty()) throw MalformedFile("'" + path + "' is empty");
  const auto& header = rows[0];
  const bool labeled = header.size() == 4 && header[3] == "label";
  if (!(header.size() == 3 || labeled) || header[0] != "period" ||
      header[1] != "series_id" || header[2] != "value")
    throw MalformedFile(
        "'" + path +
        "': shock header must be 'period,series_id,value[,label]'");

  std::map<std::string, std::map<int, double>> cells;
  std::map<std::string, std::map<int, std::string>> labels;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw MalformedFile("'" + path + "': row " + std::to_string(r + 1) +
                          " has wrong arity");
    bool ok = false;
    const long period = csv::parse_long(row[0], &ok);
    if (!ok)
      throw NonNumericValue("'" + path + "': bad period '" + row[0] + "'");
    const auto v = csv::parse_double(row[2], &ok);
    if (!ok || !v)
      throw NonNumericValue("'" + path + "': bad value '" + row[2] + "'");
    if (!cells[row[1]].emplace(static_cast<int>(period), *v).second)
      throw DuplicateCell("'" + path + "': period " + std::to_string(period) +
                          ", series '" + row[1] + "'");
    if (labeled && !row[3].empty())
      labels[row[1]][static_cast<int>(period)] = row[3];
  }

  std::vector<ShockSeries> out;
  const int T = last_period - first_period + 1;
  for (const auto& [id, series] : cells) {
    ShockSeries s;
    s.shock_id = id;
    s.values = Eigen::VectorXd::Zero(T);
    for (const auto& [t, v] : series) {
      if (t < first_period || t > last_period) continue;
      s.values[t - first_period] = v;
    }
    if (auto it = labels.find(id); it != labels.end()) s.event_labels = it->second;
    out.push_back(std::move(s));
  }
  return out;  // std::map iteration: lexicographic by shock_id
}

SeriesPanel transform(const SeriesPanel& panel,
                      const std::map<std::string, TransformSpec>& specs) {
  for (const auto& [id, spec] : specs) {
    panel.column_index(id);  // throws UnknownReference
    const bool deflating =
        spec.kind == TransformKind::deflate_then_log_difference;
    if (deflating && !spec.deflator_series_id)
      throw MissingDeflator("series '" + id + "' deflates without a deflator");
    if (!deflating && spec.deflator_series_id)
      throw InvalidArgument("series '" + id +
                            "' names a deflator but does not deflate");
    if (deflating && !panel.has_series(*spec.deflator_series_id))
      throw MissingDeflator("deflator '" + *spec.deflator_series_id +
                            "' for series '" + id + "' not in panel");
  }

  bool any_difference = false;
  for (const auto& [id, spec] : specs)
    if (spec.kind != TransformKind::level &&
        spec.kind != TransformKind::log_level)
      any_difference = true;

  const Eigen::Index T = panel.rows();
  if (any_difference && T < 2)
    throw InvalidArgument("differencing needs at least two periods");
  const Eigen::Index T_out = any_difference ? T - 1 : T;

  Eigen::MatrixXd out(T_out, panel.cols());
  std::vector<SeriesMeta> meta = panel.series_meta();

  const auto require_positive = [&](const Eigen::VectorXd& x,
                                    const std::string& id) {
    if ((x.array() <= 0.0).any())
      throw NonPositiveLogInput("series '" + id +
                                "' has non-positive values under a log "
                                "transform");
  };

  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    const std::string& id = panel.series_ids()[static_cast<std::size_t>(j)];
    TransformSpec spec;
    if (auto it = specs.find(id); it != specs.end()) spec = it->second;
    Eigen::VectorXd x = panel.observations().col(j);

    Eigen::VectorXd y;
    switch (spec.kind) {
      case TransformKind::level:
        y = x;
        break;
      case TransformKind::log_level:
        require_positive(x, id);
        y = x.array().log();
        break;
      case TransformKind::first_difference:
        y = x.tail(T - 1) - x.head(T - 1);
        break;
      case TransformKind::log_difference: {
        require_positive(x, id);
        Eigen::VectorXd lx = x.array().log();
        y = lx.tail(T - 1) - lx.head(T - 1);
        break;
      }
      case TransformKind::deflate_then_log_difference: {
        Eigen::VectorXd deflator = panel.column(*spec.deflator_series_id);
        require_positive(deflator, *spec.deflator_series_id);
        Eigen::VectorXd real = x.array() / deflator.array();
        require_positive(real, id);
        Eigen::VectorXd lx = real.array().log();
        y = lx.tail(T - 1) - lx.head(T - 1);
        break;
      }
    }
    // Undifferenced series lose the first period so every column covers the
    // same window.
    if (any_difference && y.size() == T) y = y.tail(T - 1).eval();
    out.col(j) = y;
    meta[static_cast<std::size_t>(j)].transform_applied = spec;
  }

  std::vector<int> window(panel.time_index().begin() + (any_difference ? 1 : 0),
                          panel.time_index().end());
  return SeriesPanel(std::move(out), std::move(window), panel.series_ids(),
                     std::move(meta));
}

StandardizeResult standardize(const SeriesPanel& panel) {
  const auto T = static_cast<double>(panel.rows());
  Eigen::VectorXd means(panel.cols());
  Eigen::VectorXd stds(panel.cols());
  Eigen::MatrixXd out(panel.rows(), panel.cols());
  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    const Eigen::VectorXd& x = panel.observations().col(j);
    const double mu = x.mean();
    const double sd = std::sqrt((x.array() - mu).square().sum() / T);
    if (sd == 0.0)
      throw ZeroVarianceSeries(
          "series '" + panel.series_ids()[static_cast<std::size_t>(j)] +
          "' is constant");
    means[j] = mu;
    stds[j] = sd;
    out.col(j) = (x.array() - mu) / sd;
  }
  SeriesPanel p(std::move(out), panel.time_index(), panel.series_ids(),
                panel.series_meta());
  return {std::move(p), std::move(means), std::move(stds)};
}

std::vector<SummaryRow> summary_stats(const SeriesPanel& panel,
                                      const std::string& reference_series_id) {
  const Eigen::VectorXd ref = panel.column(reference_series_id);
  const auto T = static_cast<double>(panel.rows());
  const Eigen::VectorXd ref_c = ref.array() - ref.mean();
  const double ref_ss = ref_c.squaredNorm();

  std::vector<SummaryRow> rows;
  rows.reserve(static_cast<std::size_t>(panel.cols()));
  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    const Eigen::VectorXd& x = panel.observations().col(j);
    SummaryRow row;
    row.series_id = panel.series_ids()[static_cast<std::size_t>(j)];
    row.mean = x.mean();
    row.max = x.maxCoeff();
    row.min = x.minCoeff();
    const Eigen::VectorXd xc = x.array() - row.mean;
    row.std_dev = T > 1 ? std::sqrt(xc.squaredNorm() / (T - 1)) : 0.0;
    const double denom = std::sqrt(xc.squaredNorm() * ref_ss);
    row.corr_with_reference =
        denom > 0 ? std::clamp(xc.dot(ref_c) / denom, -1.0, 1.0) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace favar
