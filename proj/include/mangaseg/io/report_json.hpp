#ifndef MANGASEG_IO_REPORT_JSON_HPP_
#define MANGASEG_IO_REPORT_JSON_HPP_

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mangaseg/aggregate.hpp"
#include "mangaseg/metrics.hpp"
#include "mangaseg/synth/textify.hpp"

namespace mangaseg::io
{

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Mode mode_from_string(const std::string& s)
{
  if (s == "normal") return Mode::Normal;
  if (s == "relaxed") return Mode::Relaxed;
  throw InputError("unknown mode: " + s);
}

inline TextClass class_from_string(const std::string& s)
{
  if (s == "easy") return TextClass::Easy;
  if (s == "hard") return TextClass::Hard;
  throw InputError("unknown text class: " + s);
}

inline json to_json(const PixelMetrics& p)
{
  return {{"precision", p.precision}, {"recall", p.recall}, {"pf1", p.pf1},
          {"tp_px", p.counts.tp_px},  {"fp_px", p.counts.fp_px}, {"fn_px", p.counts.fn_px}};
}

inline json to_json(const ComponentMetrics& c)
{
  return {{"m", c.m},           {"tp", c.tp},         {"fp", c.fp},         {"n_detections", c.n_detections},
          {"r_quant", c.r_quant}, {"p_quant", c.p_quant}, {"r_qual", c.r_qual}, {"p_qual", c.p_qual},
          {"f1_qual", c.f1_qual}, {"gr", c.gr},           {"gp", c.gp},         {"gf1", c.gf1}};
}

inline json to_json(const MetricsReport& r)
{
  json per_component = json::array();
  for (const auto& c : r.per_component) {
    per_component.push_back({{"gt_label", c.gt_label},
                             {"class", to_string(c.text_class)},
                             {"matched", c.matched},
                             {"cov", c.cov},
                             {"acc", c.acc},
                             {"f1_qual", c.f1_qual}});
  }
  return {{"mode", to_string(r.mode)},
          {"relax_iterations", r.relax_iterations},
          {"degenerate", r.degenerate},
          {"pixel", to_json(r.pixel)},
          {"component", to_json(r.component)},
          {"per_class",
           {{"easy", {{"pixel", to_json(r.easy().pixel)}, {"component", to_json(r.easy().component)}}},
            {"hard", {{"pixel", to_json(r.hard().pixel)}, {"component", to_json(r.hard().component)}}}}},
          {"per_component", per_component}};
}

inline PixelMetrics pixel_from_json(const json& j)
{
  PixelMetrics p;
  p.precision = j.at("precision").get<double>();
  p.recall = j.at("recall").get<double>();
  p.pf1 = j.at("pf1").get<double>();
  p.counts = {j.at("tp_px").get<std::int64_t>(), j.at("fp_px").get<std::int64_t>(),
              j.at("fn_px").get<std::int64_t>()};
  return p;
}

inline ComponentMetrics component_from_json(const json& j)
{
  ComponentMetrics c;
  c.m = j.at("m").get<int>();
  c.tp = j.at("tp").get<int>();
  c.fp = j.at("fp").get<int>();
  c.n_detections = j.at("n_detections").get<int>();
  c.r_quant = j.at("r_quant").get<double>();
  c.p_quant = j.at("p_quant").get<double>();
  c.r_qual = j.at("r_qual").get<double>();
  c.p_qual = j.at("p_qual").get<double>();
  c.f1_qual = j.at("f1_qual").get<double>();
  c.gr = j.at("gr").get<double>();
  c.gp = j.at("gp").get<double>();
  c.gf1 = j.at("gf1").get<double>();
  return c;
}

inline MetricsReport report_from_json(const json& j, const std::string& image_id)
{
  MetricsReport r;
  r.image_id = image_id;
  r.mode = mode_from_string(j.at("mode").get<std::string>());
  r.relax_iterations = j.at("relax_iterations").get<int>();
  r.degenerate = j.at("degenerate").get<bool>();
  r.pixel = pixel_from_json(j.at("pixel"));
  r.component = component_from_json(j.at("component"));
  for (const char* name : {"easy", "hard"}) {
    const json& s = j.at("per_class").at(name);
    auto& section = r.per_class[class_slot(class_from_string(name))];
    section.pixel = pixel_from_json(s.at("pixel"));
    section.component = component_from_json(s.at("component"));
  }
  for (const json& c : j.at("per_component")) {
    r.per_component.push_back({c.at("gt_label").get<int>(), class_from_string(c.at("class").get<std::string>()),
                               c.at("matched").get<bool>(), c.at("cov").get<double>(),
                               c.at("acc").get<double>(), c.at("f1_qual").get<double>()});
  }
  return r;
}

/// Per-image file: every requested mode of one image.
inline json image_report_json(const std::string& image_id, const std::vector<MetricsReport>& reports)
{
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return {{"schema_version", kSchemaVersion}, {"kind", "image_report"}, {"image_id", image_id}, {"reports", arr}};
}

/// Reports in an image file; returns nothing for other JSON kinds.
inline std::vector<MetricsReport> reports_from_image_json(const json& j)
{
  std::vector<MetricsReport> out;
  if (!j.is_object() || j.value("kind", "") != "image_report") return out;
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw InputError("unsupported report schema_version " + j.at("schema_version").dump());
  }
  const auto id = j.at("image_id").get<std::string>();
  for (const json& r : j.at("reports")) out.push_back(report_from_json(r, id));
  return out;
}

inline json to_json(const AggregateSummary& s)
{
  json folds = json::object();
  for (const auto& [fold, means] : s.fold_means) {
    json m = json::object();
    for (const auto& [k, v] : means) m[k] = v;
    folds[fold] = {{"n", s.fold_sizes.at(fold)}, {"means", m}};
  }
  json metrics = json::object();
  for (const auto& [k, v] : s.metrics) {
    metrics[k] = {{"mean", v.mean}, {"std", v.stddev}, {"formatted", v.formatted()}};
  }
  return {{"mode", to_string(s.mode)}, {"folds", folds}, {"metrics", metrics}, {"unassigned", s.unassigned}};
}

/// Fold manifest: {"fold name": ["stem", ...], ...}.
inline FoldMap fold_map_from_json(const json& j)
{
  if (!j.is_object()) throw InputError("fold manifest must be a JSON object");
  FoldMap out;
  for (const auto& [fold, stems] : j.items()) {
    if (!stems.is_array()) throw InputError("fold '" + fold + "' must list stems");
    out[fold] = stems.get<std::vector<std::string>>();
  }
  return out;
}

inline std::string format_bin_edge(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// CSV with columns class,mode,bin_lo,bin_hi,count; every bin of every
/// class/mode pair in `modes`.
inline std::string histogram_csv(const F1Histogram& h, const std::vector<Mode>& modes)
{
  std::ostringstream out;
  out << "class,mode,bin_lo,bin_hi,count\n";
  for (const TextClass c : {TextClass::Easy, TextClass::Hard}) {
    for (const Mode m : modes) {
      const auto& counts = h.counts.at({c, m});
      for (int b = 0; b < h.bins; ++b) {
        out << to_string(c) << ',' << to_string(m) << ',' << format_bin_edge(static_cast<double>(b) / h.bins)
            << ',' << format_bin_edge(static_cast<double>(b + 1) / h.bins) << ',' << counts[b] << '\n';
      }
    }
  }
  return out.str();
}

/// Plain bar chart, one panel per class/mode pair.
inline std::string histogram_svg(const F1Histogram& h, const std::vector<Mode>& modes)
{
  const int panel_w = 320, panel_h = 200, margin = 30;
  const int cols = static_cast<int>(modes.size());
  std::int64_t peak = 1;
  for (const auto& [key, counts] : h.counts) {
    for (auto v : counts) peak = std::max(peak, v);
  }
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * (panel_w + margin) + margin
    << "\" height=\"" << 2 * (panel_h + 2 * margin) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  int row = 0;
  for (const TextClass c : {TextClass::Easy, TextClass::Hard}) {
    for (int col = 0; col < cols; ++col) {
      const Mode m = modes[static_cast<std::size_t>(col)];
      const auto& counts = h.counts.at({c, m});
      const int ox = margin + col * (panel_w + margin);
      const int oy = margin + row * (panel_h + 2 * margin);
      s << "<text x=\"" << ox << "\" y=\"" << oy - 8 << "\">" << to_string(c) << " / " << to_string(m)
        << "</text>\n";
      s << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << panel_w << "\" height=\"" << panel_h
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
      const double bar_w = static_cast<double>(panel_w) / h.bins;
      for (int b = 0; b < h.bins; ++b) {
        const double bh = static_cast<double>(counts[b]) / static_cast<double>(peak) * panel_h;
        s << "<rect x=\"" << format_bin_edge(ox + b * bar_w + 1) << "\" y=\"" << format_bin_edge(oy + panel_h - bh)
          << "\" width=\"" << format_bin_edge(bar_w - 2) << "\" height=\"" << format_bin_edge(bh)
          << "\" fill=\"#4a78b0\"><title>" << counts[b] << "</title></rect>\n";
      }
      s << "<text x=\"" << ox << "\" y=\"" << oy + panel_h + 14 << "\">0</text>"
        << "<text x=\"" << ox + panel_w - 8 << "\" y=\"" << oy + panel_h + 14 << "\">1</text>\n";
    }
    ++row;
  }
  s << "</svg>\n";
  return s.str();
}

inline json rgb_json(const Rgb& c) { return json::array({c.r, c.g, c.b}); }

inline json rect_json(const synth::Rect& r) { return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

/// Manifest of one synthetic pair.
inline json manifest_json(std::uint64_t seed, const std::string& source, const synth::TextifyResult& t)
{
  json blocks = json::array();
  for (const auto& b : t.blocks) {
    json lines = json::array();
    for (const auto& l : b.lines) lines.push_back(synth::to_utf8(l));
    const auto& st = b.style;
    blocks.push_back({{"rect", rect_json(b.rect)},
                      {"inner", rect_json(b.inner)},
                      {"sfx", b.sfx},
                      {"rendered", b.rendered},
                      {"font", b.font_id},
                      {"font_size", b.font_size},
                      {"text", synth::to_utf8(b.text)},
                      {"lines", lines},
                      {"style",
                       {{"text_color", rgb_json(st.text_color)},
                        {"border_color", rgb_json(st.border_color)},
                        {"orientation", st.vertical ? "vertical" : "horizontal"},
                        {"rotation_deg", st.rotation_deg},
                        {"transparency", st.transparency},
                        {"inverted", st.inverted},
                        {"border", st.has_border},
                        {"border_width", st.border_width}}}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "synth_manifest"},
          {"seed", seed},
          {"source", source},
          {"width", t.image.width()},
          {"height", t.image.height()},
          {"padding", t.padding},
          {"single_rect", t.single_rect},
          {"text_pixels", t.mask.count()},
          {"blocks", blocks}};
}

} // namespace mangaseg::io

#endif
