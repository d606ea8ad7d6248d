#include "cvrpisa/extract.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "cvrpisa/error.hpp"
#include "cvrpisa/instance.hpp"

namespace cvrpisa {

std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".vrp" || ext == ".tsp") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return out;
}

ExtractOutcome extract_files(const std::vector<std::filesystem::path>& files, const FeatureConfig& cfg,
                             std::uint64_t seed, std::size_t jobs) {
  struct Slot {
    std::optional<FeatureVector> fv;
    std::size_t customers = 0;
    std::string error;
  };
  std::vector<Slot> slots(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        const Instance inst = load_instance(files[i]);
        slots[i].customers = inst.customer_count();
        slots[i].fv = extract_all(inst, cfg, seed);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), std::max<std::size_t>(files.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ExtractOutcome out;
  MetadataTable& t = out.table;
  t.feature_names = feature_catalog();
  t.attribute_names = {"n_customers"};
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (slots[i].fv) {
      ok.push_back(i);
    } else {
      out.failures.push_back({files[i], slots[i].error});
    }
  }
  const auto d = static_cast<Eigen::Index>(t.feature_names.size());
  t.features.resize(static_cast<Eigen::Index>(ok.size()), d);
  t.performance.resize(static_cast<Eigen::Index>(ok.size()), 0);
  for (std::size_t k = 0; k < ok.size(); ++k) {
    const auto& fv = *slots[ok[k]].fv;
    t.instances.push_back(fv.instance_name);
    t.sources.push_back(source_from_name(fv.instance_name));
    t.attributes.push_back({std::to_string(slots[ok[k]].customers)});
    if (fv.probing_partial) ++out.partial_probing;
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto v = fv.get(t.feature_names[static_cast<std::size_t>(j)]);
      t.features(static_cast<Eigen::Index>(k), j) = v ? *v : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

}  // namespace cvrpisa
