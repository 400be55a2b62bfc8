package corpus.math;

public final class Matrix {
    private final double[][] data;
    private final int rows;
    private final int cols;

    public Matrix(int rows, int cols) {
        this.rows = rows;
        this.cols = cols;
        this.data = new double[rows][cols];
    }

    public static Matrix identity(int n) {
        Matrix m = new Matrix(n, n);
        for (int i = 0; i < n; i++) {
            m.data[i][i] = 1.0;
        }
        return m;
    }

    public Matrix multiply(Matrix other) {
        if (cols != other.rows) {
            throw new IllegalArgumentException("shape mismatch");
        }
        Matrix out = new Matrix(rows, other.cols);
        for (int i = 0; i < rows; i++) {
            for (int k = 0; k < cols; k++) {
                double a = data[i][k];
                for (int j = 0; j < other.cols; j++) {
                    out.data[i][j] += a * other.data[k][j];
                }
            }
        }
        return out;
    }

    public Matrix transpose() {
        Matrix t = new Matrix(cols, rows);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++)
                t.data[j][i] = data[i][j];
        return t;
    }

    public double trace() {
        double sum = 0;
        int n = Math.min(rows, cols);
        for (int i = 0; i < n; i++) {
            sum += data[i][i];
        }
        return sum;
    }

    public Matrix add(Matrix other) {
        if (rows != other.rows || cols != other.cols) {
            throw new IllegalArgumentException("shape mismatch");
        }
        Matrix out = new Matrix(rows, cols);
        for (int i = 0; i < rows; i++) {
            for (int j = 0; j < cols; j++) {
                out.data[i][j] = data[i][j] + other.data[i][j];
            }
        }
        return out;
    }

    public double frobeniusNorm() {
        double acc = 0.0;
        for (double[] row : data) {
            for (double v : row) {
                acc += v * v;
            }
        }
        return Math.sqrt(acc);
    }

    public Matrix scale(double factor) {
        Matrix out = new Matrix(rows, cols);
        for (int i = 0; i < rows; i++) {
            for (int j = 0; j < cols; j++) {
                out.data[i][j] = data[i][j] * factor;
            }
        }
        return out;
    }

    @Override
    public String toString() {
        StringBuilder sb = new StringBuilder();
        for (int i = 0; i < rows; i++) {
            sb.append('[');
            for (int j = 0; j < cols; j++) {
                if (j > 0) sb.append(", ");
                sb.append(data[i][j]);
            }
            sb.append("]\n");
        }
        return sb.toString();
    }
}
