#pragma once

#include <array>
#include <utility>

namespace kdvtau {

template <class T>
struct Mat2 {
    std::array<std::array<T, 2>, 2> e;

    T &operator()(int i, int j) { return e[i][j]; }
    const T &operator()(int i, int j) const { return e[i][j]; }

    friend Mat2 operator*(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
        return r;
    }
    friend Mat2 operator+(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = a.e[i][j] + b.e[i][j];
        return r;
    }
    friend Mat2 operator-(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = a.e[i][j] - b.e[i][j];
        return r;
    }
    T trace() const { return e[0][0] + e[1][1]; }

    template <class F>
    auto map(F &&f) const -> Mat2<decltype(f(std::declval<const T &>()))> {
        Mat2<decltype(f(std::declval<const T &>()))> r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = f(e[i][j]);
        return r;
    }
};

} // namespace kdvtau
