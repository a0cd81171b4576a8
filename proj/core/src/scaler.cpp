#include <cmath>
#include <stdexcept>

#include "veribench/learn.hpp"

namespace veribench::learn {

Scaler fit_scaler(const Matrix& X) {
    if (X.rows == 0 || X.cols == 0) throw std::invalid_argument("fit_scaler: empty matrix");
    Scaler s;
    s.mean.assign(X.cols, 0.0);
    s.stddev.assign(X.cols, 0.0);
    const double n = static_cast<double>(X.rows);
    for (std::size_t c = 0; c < X.cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < X.rows; ++r) sum += X.at(r, c);
        s.mean[c] = sum / n;
    }
    for (std::size_t c = 0; c < X.cols; ++c) {
        double ss = 0.0;
        for (std::size_t r = 0; r < X.rows; ++r) {
            double d = X.at(r, c) - s.mean[c];
            ss += d * d;
        }
        s.stddev[c] = std::sqrt(ss / n);  // population std
    }
    return s;
}

Matrix apply_scaler(const Scaler& s, const Matrix& X) {
    if (X.cols != s.mean.size())
        throw std::invalid_argument("apply_scaler: column count mismatch");
    Matrix Z(X.rows, X.cols);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            double sd = s.stddev[c];
            Z.at(r, c) = sd == 0.0 ? 0.0 : (X.at(r, c) - s.mean[c]) / sd;
        }
        double norm = 0.0;
        for (std::size_t c = 0; c < X.cols; ++c) norm += Z.at(r, c) * Z.at(r, c);
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (std::size_t c = 0; c < X.cols; ++c) Z.at(r, c) /= norm;
    }
    return Z;
}

bool is_scaled_signature(std::string_view signature) {
    std::string_view suffix = kScaledSuffix;
    return signature.size() >= suffix.size() &&
           signature.substr(signature.size() - suffix.size()) == suffix;
}

}  // namespace veribench::learn
