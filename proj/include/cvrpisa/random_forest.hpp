#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cvrpisa {

struct ForestParams {
  std::size_t trees = 100;
  // Features considered per split.
  std::size_t mtry = 1;
};

// Bagged binary classification trees grown to purity with Gini splits.
class RandomForest {
 public:
  void fit(const Eigen::MatrixXd& x, const std::vector<int>& labels, const ForestParams& params, std::uint64_t seed);

  int predict(const Eigen::RowVectorXd& row) const;

  // Misclassification rate of out-of-bag majority votes, over samples that
  // were out of bag at least once. 0 when no sample ever was.
  double oob_error() const { return oob_error_; }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
  };
  using Tree = std::vector<Node>;

  int grow(Tree& tree, const Eigen::MatrixXd& x, const std::vector<int>& y, std::vector<std::size_t>& idx,
           std::size_t begin, std::size_t end, std::size_t mtry, std::uint64_t& state);
  static int predict_tree(const Tree& tree, const Eigen::RowVectorXd& row);

  std::vector<Tree> trees_;
  double oob_error_ = 0.0;
};

// Convenience: OOB error of a forest fit to (x, labels).
double forest_oob_error(const Eigen::MatrixXd& x, const std::vector<int>& labels, const ForestParams& params,
                        std::uint64_t seed);

}  // namespace cvrpisa
