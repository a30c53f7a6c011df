#include "insar/chain_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "insar/errors.hpp"

namespace insar {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigError("chain config line " + std::to_string(line) + ": " + msg);
}

double to_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(line, "expected a number, got '" + std::string(token) + "'");
  }
  return v;
}

std::size_t to_count(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return v;
}

std::vector<double> to_list(std::string_view value, std::size_t line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < value.size()) {
    const auto b = value.find_first_not_of(" \t,", pos);
    if (b == std::string_view::npos) break;
    auto e = value.find_first_of(" \t,", b);
    if (e == std::string_view::npos) e = value.size();
    out.push_back(to_double(value.substr(b, e - b), line));
    pos = e;
  }
  return out;
}

struct Section {
  std::size_t line = 0;
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>> entries;
};

LayerSpec build_layer(const Section& sec) {
  const auto get = [&](std::string_view key) -> std::optional<std::pair<std::string, std::size_t>> {
    const auto it = sec.entries.find(key);
    if (it == sec.entries.end()) return std::nullopt;
    return it->second;
  };

  LayerSpec spec;
  if (auto v = get("in")) spec.in_channels = to_count(v->first, v->second);
  if (auto v = get("out")) spec.out_channels = to_count(v->first, v->second);
  if (auto v = get("kernel_size")) spec.kernel_size = to_count(v->first, v->second);
  const std::size_t k = spec.kernel_size;
  if (k == 0 || k % 2 == 0) fail(sec.line, "kernel_size must be odd");

  const auto kernel = get("kernel");
  const auto weights = get("weights");
  if (kernel && weights) fail(weights->second, "'kernel' and 'weights' are mutually exclusive");
  if (weights) {
    spec.weights = to_list(weights->first, weights->second);
  } else {
    const std::string name = kernel ? kernel->first : "impulse";
    std::vector<double> base;
    try {
      base = canned_kernel(parse_canned_kernel(name), k);
    } catch (const InvalidInputError& e) {
      fail(kernel ? kernel->second : sec.line, e.what());
    }
    bool diagonal = false;
    if (auto p = get("kernel_pairs")) {
      if (p->first == "diagonal") {
        diagonal = true;
      } else if (p->first != "all") {
        fail(p->second, "kernel_pairs must be 'all' or 'diagonal'");
      }
    }
    spec.weights.assign(spec.in_channels * spec.out_channels * k * k, 0.0);
    for (std::size_t i = 0; i < spec.in_channels; ++i) {
      for (std::size_t j = 0; j < spec.out_channels; ++j) {
        if (diagonal && i != j) continue;
        std::copy(base.begin(), base.end(),
                  spec.weights.begin() + static_cast<std::ptrdiff_t>((i * spec.out_channels + j) * k * k));
      }
    }
  }

  if (auto v = get("bias")) {
    spec.biases = to_list(v->first, v->second);
  } else {
    spec.biases.assign(spec.out_channels, 0.0);
  }

  const auto act = get("activation");
  const auto alpha = get("alpha");
  try {
    if (act && act->first == "softplus" && !alpha) {
      fail(act->second, "softplus needs an explicit 'alpha'");
    }
    const double a = alpha ? to_double(alpha->first, alpha->second) : 1.0;
    spec.activation = act ? parse_activation(act->first, a) : Activation::identity();
    if (auto v = get("resample")) spec.resample = parse_resample(v->first);
  } catch (const InvalidInputError& e) {
    fail(sec.line, e.what());
  }
  return spec;
}

}  // namespace

LayerChain parse_chain_config(std::string_view text) {
  static const std::map<std::string, int, std::less<>> kKnownKeys{
      {"in", 0},   {"out", 0},        {"kernel_size", 0}, {"kernel", 0},   {"kernel_pairs", 0},
      {"weights", 0}, {"bias", 0},    {"activation", 0},  {"alpha", 0},    {"resample", 0}};

  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[layer]") fail(line_no, "unknown section '" + std::string(line) + "'");
      sections.push_back(Section{line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    if (sections.empty()) fail(line_no, "key outside of a [layer] section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) fail(line_no, "unknown key '" + key + "'");
    if (value.empty()) fail(line_no, "empty value for '" + key + "'");
    if (!sections.back().entries.emplace(key, std::make_pair(value, line_no)).second) {
      fail(line_no, "duplicate key '" + key + "'");
    }
  }

  LayerChain chain;
  for (const auto& sec : sections) chain.layers.push_back(build_layer(sec));
  for (std::size_t l = 0; l < chain.layers.size(); ++l) {
    try {
      chain.layers[l].validate();
      if (l > 0) LayerChain{{chain.layers[l - 1], chain.layers[l]}}.validate();
    } catch (const InvalidInputError& e) {
      fail(sections[l].line, e.what());
    }
  }
  return chain;
}

LayerChain load_chain_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open chain config '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_chain_config(ss.str());
}

}  // namespace insar
