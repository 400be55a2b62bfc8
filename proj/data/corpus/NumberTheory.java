package corpus.math;

public class NumberTheory
{
    public static long gcd(long a, long b)
    {
        while (b != 0)
        {
            long t = a % b;
            a = b;
            b = t;
        }
        return Math.abs(a);
    }

    public static long lcm(long a, long b)
    {
        if (a == 0 || b == 0)
        {
            return 0;
        }
        return Math.abs(a / gcd(a, b) * b);
    }

    public static boolean isPrime(int n)
    {
        if (n < 2)
        {
            return false;
        }
        for (int d = 2; (long) d * d <= n; d++)
        {
            if (n % d == 0)
            {
                return false;
            }
        }
        return true;
    }

    /* Sieve of Eratosthenes up to and including limit. */
    public static boolean[] sieve(int limit)
    {
        boolean[] composite = new boolean[limit + 1];
        composite[0] = true;
        if (limit >= 1) composite[1] = true;
        for (int i = 2; i * i <= limit; i++)
        {
            if (!composite[i])
            {
                for (int j = i * i; j <= limit; j += i)
                {
                    composite[j] = true;
                }
            }
        }
        return composite;
    }

    public static long power(long base, int exp, long mod)
    {
        long result = 1 % mod;
        long b = base % mod;
        while (exp > 0)
        {
            if ((exp & 1) == 1)
            {
                result = result * b % mod;
            }
            b = b * b % mod;
            exp >>= 1;
        }
        return result;
    }

    public static int digitSum(int value)
    {
        int sum = 0;
        int v = Math.abs(value);
        while (v > 0)
        {
            sum += v % 10;
            v /= 10;
        }
        return sum;
    }

    public static long factorial(int n)
    {
        long f = 1L;
        for (int i = 2; i <= n; ++i)
        {
            f *= i;
        }
        return f;
    }

    public static int fibonacci(int n)
    {
        int prev = 0, cur = 1;
        for (int i = 0; i < n; i++)
        {
            int next = prev + cur;
            prev = cur;
            cur = next;
        }
        return prev;
    }
}
