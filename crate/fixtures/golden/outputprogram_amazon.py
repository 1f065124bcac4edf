import unittest
import time
from appium import webdriver


class MultiActionTests(unittest.TestCase):
    reportDirectory = 'reports'
    reportFormat = 'xml'
    testName = 'Untitled'
    dc = {}
    driver = None

    def setUp(self):
        self.dc['reportDirectory'] = self.reportDirectory
        self.dc['reportFormat'] = self.reportFormat
        self.dc['testName'] = self.testName
        self.dc['udid'] = '03ab1c13003c0097'
        self.dc['appPackage'] = 'com.amazon.mShop.android.shopping'
        self.dc['appActivity'] = 'com.amazon.mShop.home.HomeActivity'
        self.dc['platformName'] = 'android'
        self.driver = webdriver.Remote('http://localhost:4723/wd/hub', self.dc)

    def testUntitled(self):
        self.driver.launch_app()
        time.sleep(1)
        self.driver.find_element_by_xpath("xpath=//*[@text='Hello. Sign In']").click()
        self.driver.find_element_by_xpath("xpath=//*[@text='Login. Already a customer? ' and @class='android.widget.RadioButton']").click()
        self.driver.find_element_by_xpath("xpath=//*[@id='ap_email_login']").click()
        self.driver.find_element_by_xpath("xpath=//*[@class='android.widget.EditText']").send_keys("mobiletestaa@gmail.com")
        self.driver.find_element_by_xpath("xpath=//*[@text='Continue']").click()
        self.driver.find_element_by_xpath("xpath=//*[@id='ap_password']").click()
        self.driver.find_element_by_xpath("xpath=//*[@class='android.widget.EditText']").send_keys("testingapp")
        self.driver.find_element_by_xpath("xpath=//*[@id='signInSubmit']").click()
        self.driver.find_element_by_xpath("xpath=//*[@id='rs_search_src_text']").click(); self.driver.find_element_by_xpath("xpath=//*[@id='rs_search_src_text']").send_keys("kidsbooks")
        self.driver.press_keycode(66)
        self.driver.find_elements_by_xpath("xpath=//*[@class='android.widget.Image']")[1 - 1].click()
        self.driver.find_element_by_xpath("xpath=//*[@id='add-to-cart-button']").click()
        self.driver.find_element_by_xpath("xpath=//*[@text='Proceed to checkout']").click()
        self.driver.close_app()

    def tearDown(self):
        self.driver.quit()


if __name__ == '__main__':
    unittest.main()
